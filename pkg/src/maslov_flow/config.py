"""JSON problem configurations.

Layout::

    {
      "name": "jacobi_dirichlet",
      "seed": 0,
      "mesh": 64,
      "tolerances": {"rank_tol": 1e-8, "eig_zero_tol": 1e-7, "residual_tol": 1e-9},
      "problem": {
        "n": 1, "T": 4.0,
        "p": [[1]], "q": [[0]], "r": [[-1]],
        "R": [],
        "homotopy": "linear"
      },
      "tasks": [{"task": "cor1"}, {"task": "thm1"}]
    }

Complex scalars are written ``[re, im]``; matrices are nested arrays of
scalars. Time-dependent matrices are ``{"kind": "constant", "value": M}``,
``{"kind": "poly", "coeffs": [M0, M1, ...]}`` (``sum M_k t^k``) or
``{"kind": "samples", "times": [...], "values": [M, ...]}``. A bare number
stands for that multiple of the identity. Boundary subspaces are lists of
spanning vectors of length ``2n``; ``[]`` is ``R = {0}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ContractViolation
from .hamiltonian import MatrixPath, fundamental_solution
from .harness import (
    ProblemSpec,
    VerificationReport,
    exp_path,
    suite,
    verify_block_flow,
    verify_concavity,
    verify_cor1,
    verify_index,
    verify_lemma45,
    verify_morse_formula,
    verify_thm1,
    verify_thm2,
    verify_thm3,
    SUITES,
)
from .numeric import DEFAULT_TOL, Tolerances
from .symplectic import boundary_derive

TASKS = ("thm1", "thm2", "cor1", "thm3", "lemma45", "concavity", "index", "morse_formula", "block_flow", "suite")


class ConfigError(ContractViolation):
    """Malformed configuration; the message names the offending field."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


def _scalar(x, where):
    if isinstance(x, bool):
        raise ConfigError(where, "expected a number or [re, im]")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        return complex(x[0], x[1])
    raise ConfigError(where, f"expected a number or [re, im], got {json.dumps(x)}")


def parse_matrix(x, where: str, n: int | None = None) -> np.ndarray:
    """Nested array (or a number times the identity) to a complex matrix."""
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        if n is None:
            raise ConfigError(where, "a bare number needs a known size n")
        return complex(x) * np.eye(n, dtype=complex)
    if not isinstance(x, list) or not x or not all(isinstance(row, list) for row in x):
        raise ConfigError(where, "expected a matrix (list of rows)")
    rows = [[_scalar(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(x)]
    if len({len(r) for r in rows}) != 1:
        raise ConfigError(where, "rows have different lengths")
    M = np.array(rows, dtype=complex)
    if n is not None and M.shape != (n, n):
        raise ConfigError(where, f"expected a {n}x{n} matrix, got {M.shape[0]}x{M.shape[1]}")
    return M


def parse_vectors(x, where: str, length: int) -> np.ndarray:
    if x is None:
        return np.zeros((0, length), dtype=complex)
    if not isinstance(x, list):
        raise ConfigError(where, "expected a list of vectors")
    out = []
    for i, v in enumerate(x):
        if not isinstance(v, list) or len(v) != length:
            raise ConfigError(f"{where}[{i}]", f"expected a vector of length {length}")
        out.append([_scalar(c, f"{where}[{i}][{j}]") for j, c in enumerate(v)])
    return np.array(out, dtype=complex).reshape(len(out), length)


def parse_path(x, where: str, n: int | None = None) -> MatrixPath:
    """Constant, polynomial or sampled matrix path."""
    if not isinstance(x, dict):
        return MatrixPath.constant(parse_matrix(x, where, n))
    kind = x.get("kind")
    if kind == "constant":
        return MatrixPath.constant(parse_matrix(x.get("value"), f"{where}.value", n))
    if kind == "poly":
        cs = x.get("coeffs")
        if not isinstance(cs, list) or not cs:
            raise ConfigError(f"{where}.coeffs", "expected a non-empty list of matrices")
        mats = [parse_matrix(c, f"{where}.coeffs[{k}]", n) for k, c in enumerate(cs)]
        if len({m.shape for m in mats}) != 1:
            raise ConfigError(f"{where}.coeffs", "coefficients have different shapes")
        return MatrixPath.poly(mats)
    if kind == "samples":
        ts, vs = x.get("times"), x.get("values")
        if not isinstance(ts, list) or not isinstance(vs, list) or len(ts) != len(vs) or len(ts) < 2:
            raise ConfigError(where, "samples need equally long 'times' and 'values' lists (>= 2)")
        try:
            times = np.array(ts, dtype=float)
        except (TypeError, ValueError):
            raise ConfigError(f"{where}.times", "expected numbers") from None
        if np.any(np.diff(times) <= 0):
            raise ConfigError(f"{where}.times", "times must increase strictly")
        mats = [parse_matrix(v, f"{where}.values[{k}]", n) for k, v in enumerate(vs)]
        return MatrixPath.samples(times, mats)
    raise ConfigError(f"{where}.kind", f"unknown kind {kind!r} (constant, poly or samples)")


def _number(d, key, where, default=None, positive=False, integer=False):
    v = d.get(key, default)
    if v is None:
        raise ConfigError(f"{where}.{key}", "missing")
    if isinstance(v, bool) or not isinstance(v, (int, float)) or (integer and int(v) != v):
        raise ConfigError(f"{where}.{key}", f"expected {'an integer' if integer else 'a number'}")
    if positive and not v > 0:
        raise ConfigError(f"{where}.{key}", "must be positive")
    return int(v) if integer else float(v)


def parse_problem(d, where: str, tol: Tolerances, mesh: int, seed) -> ProblemSpec:
    if not isinstance(d, dict):
        raise ConfigError(where, "expected an object")
    n = _number(d, "n", where, positive=True, integer=True)
    T = _number(d, "T", where, positive=True)
    p = parse_path(d.get("p", 1), f"{where}.p", n)
    q = parse_path(d.get("q", 0), f"{where}.q", n)
    r = parse_path(d.get("r", 0), f"{where}.r", n)
    R = parse_vectors(d.get("R", []), f"{where}.R", 2 * n)
    hom = d.get("homotopy", "linear")
    start = None
    if hom == "endpoints":
        st = d.get("start")
        if not isinstance(st, dict):
            raise ConfigError(f"{where}.start", "endpoints homotopy needs start = {p, q, r}")
        start = tuple(parse_path(st.get(k, 0), f"{where}.start.{k}", n) for k in ("p", "q", "r"))
    elif hom not in ("linear", "fixed"):
        raise ConfigError(f"{where}.homotopy", f"unknown rule {hom!r}")
    frame = parse_path(d["frame"], f"{where}.frame", n) if "frame" in d else None
    return ProblemSpec(n, T, p, q, r, R, hom, start, frame, tol, mesh, seed, d.get("label", ""))


def parse_tolerances(d, where="tolerances", base: Tolerances = DEFAULT_TOL) -> Tolerances:
    if d is None:
        return base
    if not isinstance(d, dict):
        raise ConfigError(where, "expected an object")
    kw = {}
    for k, v in d.items():
        if k not in ("rank_tol", "eig_zero_tol", "residual_tol"):
            raise ConfigError(f"{where}.{k}", "unknown tolerance")
        kw[k] = _number(d, k, where, positive=True)
    try:
        return base.with_(**kw)
    except ContractViolation as exc:
        raise ConfigError(where, str(exc)) from None


@dataclass
class RunSettings:
    tol_rank: float | None = None
    tol_eig: float | None = None
    mesh: int | None = None
    seed: int | None = None
    eigen_samples: int = 0


@dataclass
class TaskPlan:
    ident: str
    kind: str
    body: dict
    index: int


@dataclass
class Config:
    name: str
    tol: Tolerances
    mesh: int
    seed: int
    problem: dict | None
    tasks: list = field(default_factory=list)


def load_config(path) -> dict:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if not isinstance(data, dict):
        raise ConfigError(str(path), "top level must be an object")
    return data


def parse_config(data: dict, settings: RunSettings | None = None) -> Config:
    """Validate a configuration and apply command-line overrides."""
    settings = settings or RunSettings()
    tol = parse_tolerances(data.get("tolerances"))
    over = {}
    if settings.tol_rank is not None:
        over["rank_tol"] = settings.tol_rank
    if settings.tol_eig is not None:
        over["eig_zero_tol"] = settings.tol_eig
    if over:
        tol = tol.with_(**over)
    mesh = settings.mesh if settings.mesh is not None else _number(data, "mesh", "", 64, True, True)
    seed = settings.seed if settings.seed is not None else _number(data, "seed", "", 0, integer=True)
    tasks = data.get("tasks", [])
    if not isinstance(tasks, list):
        raise ConfigError("tasks", "expected a list")
    cfg = Config(str(data.get("name", "")), tol, mesh, seed, data.get("problem"))
    counts: dict = {}
    for i, t in enumerate(tasks):
        if not isinstance(t, dict) or "task" not in t:
            raise ConfigError(f"tasks[{i}]", 'expected an object with a "task" field')
        if t["task"] not in TASKS:
            raise ConfigError(f"tasks[{i}].task", f"unknown task {t['task']!r}; known: {', '.join(TASKS)}")
        counts[t["task"]] = counts.get(t["task"], 0) + 1
    seen: dict = {}
    for i, t in enumerate(tasks):
        kind = t["task"]
        ident = t.get("id")
        if ident is None:
            seen[kind] = seen.get(kind, 0) + 1
            ident = kind if counts[kind] == 1 else f"{kind}_{seen[kind]}"
        plan = TaskPlan(str(ident), kind, t, i)
        build_task(cfg, plan, settings)   # validates eagerly
        cfg.tasks.append(plan)
    return cfg


def _task_problem(cfg: Config, plan: TaskPlan) -> ProblemSpec:
    where = f"tasks[{plan.index}]"
    body = plan.body.get("problem", cfg.problem)
    if body is None:
        raise ConfigError(f"{where}.problem", "no problem given for this task or at top level")
    src = f"{where}.problem" if "problem" in plan.body else "problem"
    ps = parse_problem(body, src, cfg.tol, cfg.mesh, cfg.seed)
    if "mesh" in plan.body:
        ps = replace(ps, mesh=_number(plan.body, "mesh", where, positive=True, integer=True))
    return ps


def build_task(cfg: Config, plan: TaskPlan, settings: RunSettings):
    """A zero-argument callable producing the task's reports (a list)."""
    b, kind, where, tol = plan.body, plan.kind, f"tasks[{plan.index}]", cfg.tol
    if kind == "thm1":
        ps = _task_problem(cfg, plan)
        k = int(b.get("eigen_samples", settings.eigen_samples))
        return lambda: [verify_thm1(ps, eigen_samples=k)]
    if kind == "cor1":
        ps = _task_problem(cfg, plan)
        return lambda: [verify_cor1(ps)]
    if kind == "index":
        ps = _task_problem(cfg, plan)
        s = _number(b, "s", where, 1.0)

        def run_index():
            try:
                g = fundamental_solution(ps.coeffs(), s, tol=ps.tol)
                bc = ps.bc()
            except ContractViolation as exc:
                return [VerificationReport("index", None, None, False, error=str(exc), error_kind="input")]
            return [verify_index(g, bc, ps.tol)]

        return run_index
    if kind == "thm3":
        ps = _task_problem(cfg, plan)
        a = parse_path(b["frame"], f"{where}.frame", ps.n) if "frame" in b else ps.frame
        if a is None:
            raise ConfigError(f"{where}.frame", "thm3 needs a frame path")
        return lambda: [verify_thm3(ps, a)]
    if kind == "thm2":
        if "P" not in b:
            raise ConfigError(f"{where}.P", "missing")
        P = parse_path(b["P"], f"{where}.P")
        n = P.dim
        T = _number(b, "T", where, positive=True)
        R = parse_vectors(b.get("R", []), f"{where}.R", 2 * n)
        return lambda: [verify_thm2(P, boundary_derive(R, n, tol), T, tol)]
    if kind == "lemma45":
        if "frame" not in b:
            raise ConfigError(f"{where}.frame", "missing")
        a = parse_path(b["frame"], f"{where}.frame")
        T = _number(b, "T", where, positive=True)
        R = parse_vectors(b.get("R", []), f"{where}.R", 2 * a.dim)
        return lambda: [verify_lemma45(a, boundary_derive(R, a.dim, tol), T, tol)]
    if kind == "concavity":
        if "H" in b:
            H = parse_matrix(b["H"], f"{where}.H")
            if H.shape[0] != H.shape[1] or H.shape[0] % 2:
                raise ConfigError(f"{where}.H", "expected a square matrix of even size")
            n = H.shape[0] // 2
            T = _number(b, "T", where, 1.0, positive=True)
            make_gamma = lambda: exp_path(H, T)
        else:
            ps = _task_problem(cfg, plan)
            n = ps.n
            make_gamma = lambda: fundamental_solution(ps.coeffs(), 1.0, tol=ps.tol)
        R1 = parse_vectors(b.get("R1", []), f"{where}.R1", 2 * n)
        R2 = parse_vectors(b.get("R2", []), f"{where}.R2", 2 * n)
        return lambda: [verify_concavity(make_gamma(), boundary_derive(R1, n, tol), boundary_derive(R2, n, tol), tol)]
    if kind == "morse_formula":
        A = parse_matrix(b.get("A"), f"{where}.A")
        P = parse_matrix(b.get("P"), f"{where}.P")
        return lambda: [verify_morse_formula(A, P, tol)]
    if kind == "block_flow":
        A0 = parse_matrix(b.get("A0"), f"{where}.A0")
        A1 = parse_matrix(b.get("A1"), f"{where}.A1")
        if A0.shape != A1.shape:
            raise ConfigError(where, "A0 and A1 must have the same shape")
        return lambda: [verify_block_flow(A0, A1, tol)]
    if kind == "suite":
        name = b.get("name")
        if name not in SUITES:
            raise ConfigError(f"{where}.name", f"unknown suite {name!r}; known: {', '.join(SUITES)}")
        count = _number(b, "count", where, 20, positive=True, integer=True)
        ns = b.get("n", [1, 2, 3])
        if isinstance(ns, int):
            ns = [ns]
        if not isinstance(ns, list) or not all(isinstance(v, int) and 1 <= v <= 3 for v in ns):
            raise ConfigError(f"{where}.n", "expected sizes in 1..3")
        seeds = range(cfg.seed, cfg.seed + count)
        return lambda: suite(name, seeds, tuple(ns), tol)
    raise ConfigError(f"{where}.task", f"unknown task {kind!r}")
