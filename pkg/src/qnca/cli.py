"""Command-line surface.

Subcommands cover the pipeline: validate, primes, seed, mutate, explore,
catalog, poisson.  Inputs come from algebra files or from presets
(qmatrix:MxN, poisson-qmatrix:MxN); catalog takes a Cartan type and words.
Output is either human-readable text or a versioned machine format whose
polynomials and matrices parse back with the package's own parsers.

Exit codes: 0 success, 1 a mathematical check failed (a witness is
printed), 2 input/parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import catalog as cat
from .errors import QncaError
from .formats import (MACHINE_FORMAT, algebra_to_text, index_map_line,
                      matrix_lines, parse_algebra, poly_to_pretty, poly_to_text,
                      cpoly_to_text, read_algebra)
from .mutation import (TorusEmbedding, explore_exchange_graph, membership_in_R,
                       mutate)
from .ore import ensure_hstar, validate_cgl
from .primes import (OmegaTable, compute_prime_sequence, enumerate_xi,
                     is_interval_permutation, tau_presentation)
from .scalars import scalar_to_text
from .seeds import build_seed, check_conditions, initial_seed, solve_exchange_matrix
from .torus import TorusElement


@dataclass
class JobConfig:
    command: str
    preset: str | None = None
    input_path: str | None = None
    degree_cap: int = 12
    nilp_cap: int = 64
    depth: int = 3
    check_membership: bool = False
    fmt: str = "text"
    tau: tuple[int, ...] | None = None
    sequence: tuple[int, ...] = ()
    threads: int = 1
    catalog_kind: str | None = None
    cartan_type: str | None = None
    word: tuple[int, ...] = ()
    word_w: tuple[int, ...] = ()
    word_v: tuple[int, ...] = ()


class _Lines:
    """Collects output lines; machine mode prepends the format header."""

    def __init__(self, config: JobConfig):
        self.machine = config.fmt == "machine"
        self.rows: list[str] = []
        if self.machine:
            self.rows.append("format %s" % MACHINE_FORMAT)
            self.rows.append("command %s" % config.command)

    def add(self, text: str = "") -> None:
        self.rows.append(text)

    def extend(self, rows) -> None:
        self.rows.extend(rows)

    def emit(self) -> None:
        sys.stdout.write("\n".join(self.rows) + "\n")


def _parse_int_list(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def _load_quantum(config: JobConfig):
    """Resolve a quantum presentation plus display names from the config."""
    if config.preset:
        kind, _, rest = config.preset.partition(":")
        if kind != "qmatrix":
            raise ValueError("preset %r is not a quantum algebra preset" % config.preset)
        m, _, n = rest.partition("x")
        qm = cat.quantum_matrices(int(m), int(n))
        return qm.presentation, qm.names
    if config.input_path:
        flavor, pres = read_algebra(config.input_path)
        if flavor != "quantum":
            raise ValueError("input file %s holds a %s algebra" % (config.input_path, flavor))
        return pres, tuple("x%d" % (k + 1) for k in range(pres.N))
    raise ValueError("need --preset or --input")


def _load_poisson(config: JobConfig):
    if config.preset:
        kind, _, rest = config.preset.partition(":")
        if kind != "poisson-qmatrix":
            raise ValueError("preset %r is not a poisson preset" % config.preset)
        m, _, n = rest.partition("x")
        from .poisson import poisson_matrices
        pm = poisson_matrices(int(m), int(n))
        return pm.presentation, pm.names
    if config.input_path:
        flavor, pres = read_algebra(config.input_path)
        if flavor != "poisson":
            raise ValueError("input file %s holds a %s algebra" % (config.input_path, flavor))
        return pres, tuple("x%d" % (k + 1) for k in range(pres.N))
    raise ValueError("need --preset or --input")


def _apply_tau(pres, names, config: JobConfig):
    if config.tau is None:
        return pres, names
    tau0 = tuple(t - 1 for t in config.tau)
    if not is_interval_permutation(tau0):
        raise ValueError("--tau %s does not have interval prefixes"
                         % (list(config.tau),))
    moved = tau_presentation(pres, tau0)
    return moved.presentation, tuple(names[o] for o in moved.new_to_old)


def _poly_out(poly, names, config: JobConfig) -> str:
    return poly_to_text(poly) if config.fmt == "machine" else poly_to_pretty(poly, names)


def _torus_out(element: TorusElement) -> str:
    if element.is_zero():
        return "0"
    bits = []
    for vec, coeff in element.items():
        bits.append("(%s) M(%s)" % (scalar_to_text(coeff),
                                    ",".join(str(x) for x in vec)))
    return " + ".join(bits)


# -- commands -------------------------------------------------------------------


def _cmd_validate(config: JobConfig) -> int:
    pres, names = _load_quantum(config)
    pres, names = _apply_tau(pres, names, config)
    report = validate_cgl(pres, nilpotency_cap=config.nilp_cap)
    out = _Lines(config)
    out.add("generators %d" % pres.N)
    out.add("torus_rank %d" % pres.r)
    out.add("gelfand-kirillov-dimension %d" % pres.N)
    for check in report.checks:
        line = "check %s %s" % (check.name, "pass" if check.ok else "FAIL")
        if check.detail and not check.ok:
            line += " | " + check.detail
        out.add(line)
    out.add("nilpotency-steps %d" % report.nilpotency_steps)
    try:
        pres_star = ensure_hstar(pres)
        star = " ".join(str(pres_star.lamstar_vexp(k)) for k in range(pres.N))
        out.add("lamstar-vexp %s" % star)
        hstar_ok = True
    except QncaError as exc:
        out.add("hstar-infeasible | %s" % exc)
        hstar_ok = False
    out.emit()
    return 0 if (report.ok and report.symmetric and hstar_ok) else 1


def _seed_pipeline(config: JobConfig):
    pres, names = _load_quantum(config)
    pres, names = _apply_tau(pres, names, config)
    pres = ensure_hstar(pres)
    table = OmegaTable.from_presentation(pres)
    seq = compute_prime_sequence(pres, degree_cap=config.degree_cap,
                                 threads=config.threads)
    return pres, names, table, seq


def _primes_lines(out: _Lines, seq, names, config: JobConfig) -> None:
    out.add("rank %d" % seq.rank)
    out.add("eta %s" % " ".join(str(v) for v in seq.eta))
    out.add(index_map_line("pred", seq.pred))
    out.add(index_map_line("succ", seq.succ, high=True))
    for k in range(seq.n):
        out.add("ebar %d %s" % (k + 1, " ".join(str(x) for x in seq.ebar[k])))
    for k in range(seq.n):
        out.add("y %d %s" % (k + 1, _poly_out(seq.y[k], names, config)))
    for k in sorted(seq.c):
        out.add("c %d %s" % (k + 1, _poly_out(seq.c[k], names, config)))


def _cmd_primes(config: JobConfig) -> int:
    pres, names, table, seq = _seed_pipeline(config)
    out = _Lines(config)
    _primes_lines(out, seq, names, config)
    out.emit()
    return 0


def _cmd_seed(config: JobConfig) -> int:
    pres, names, table, seq = _seed_pipeline(config)
    report = check_conditions(pres, seq)
    b = solve_exchange_matrix(seq, table, report.dstar, pres.weights)
    seed = build_seed(pres, seq, table, b, report.dstar)
    out = _Lines(config)
    _primes_lines(out, seq, names, config)
    out.add("ex %s" % " ".join(str(k + 1) for k in seed.ex))
    out.add("frozen %s" % " ".join(str(k + 1) for k in seed.frozen))
    out.add("dstar %s" % " ".join(str(d) for d in seed.dstar))
    out.add("levels %s" % " ".join("%d:%d" % (lvl, report.level_factors[lvl])
                                   for lvl in sorted(report.level_factors)))
    out.extend(matrix_lines("lambda", seed.lambda_mat))
    out.extend(matrix_lines("b", seed.b))
    out.emit()
    return 0


def _cmd_mutate(config: JobConfig) -> int:
    pres, names, table, seq = _seed_pipeline(config)
    report = check_conditions(pres, seq)
    b = solve_exchange_matrix(seq, table, report.dstar, pres.weights)
    seed = build_seed(pres, seq, table, b, report.dstar)
    embedding = TorusEmbedding(pres, seq, seed)
    out = _Lines(config)
    current = seed
    for step, direction in enumerate(config.sequence):
        k = direction - 1
        current = mutate(current, k)
        reduced = membership_in_R(current.vars[k], seq, seed, pres,
                                  embedding=embedding)
        if reduced is not None:
            body = "in-R %s" % _poly_out(reduced, names, config)
        else:
            body = "torus %s" % _torus_out(current.vars[k])
        out.add("step %d direction %d %s" % (step + 1, direction, body))
    out.extend(matrix_lines("lambda", current.lambda_mat))
    out.extend(matrix_lines("b", current.b))
    out.emit()
    return 0


def _cmd_explore(config: JobConfig) -> int:
    pres, names, table, seq = _seed_pipeline(config)
    report = check_conditions(pres, seq)
    b = solve_exchange_matrix(seq, table, report.dstar, pres.weights)
    seed = build_seed(pres, seq, table, b, report.dstar)
    result = explore_exchange_graph(seed, config.depth,
                                    membership=config.check_membership,
                                    p=pres, seq=seq)
    out = _Lines(config)
    out.add("depth %d" % result.depth)
    out.add("seeds %d" % result.count)
    for record in result.records:
        path = ",".join(str(k + 1) for k in record.path) or "-"
        out.add("seed path %s" % path)
    if config.check_membership:
        out.add("membership-failures %d" % len(result.membership_failures))
        for path, var in result.membership_failures:
            out.add("failure path %s variable %d"
                    % (",".join(str(k + 1) for k in path) or "-", var + 1))
    out.emit()
    return 0 if not result.membership_failures else 1


def _cmd_catalog(config: JobConfig) -> int:
    out = _Lines(config)
    if config.catalog_kind == "schubert":
        cd = cat.cartan_data(config.cartan_type)
        data, matrix = cat.schubert_exchange_matrix(cd, config.word)
        out.add("type %s" % config.cartan_type.upper())
        out.add("word %s" % ",".join(str(x) for x in data.word))
        out.add("ex %s" % " ".join(str(k + 1) for k in data.ex))
        out.add(index_map_line("kminus", data.kminus))
        out.add(index_map_line("kplus", data.kplus, high=True))
        out.extend(matrix_lines("b", matrix))
        out.add("rows word-positions 1..%d" % len(data.word))
        out.add("cols ex-positions %s" % " ".join(str(k + 1) for k in data.ex))
    elif config.catalog_kind == "bz":
        cd = cat.cartan_data(config.cartan_type)
        data, matrix = cat.bz_exchange_matrix(cd, config.word_w, config.word_v)
        out.add("type %s" % config.cartan_type.upper())
        out.add("word-w %s" % (",".join(str(x) for x in config.word_w) or "-"))
        out.add("word-v %s" % (",".join(str(x) for x in config.word_v) or "-"))
        out.add("indices %d (r=%d, v-letters=%d, w-letters=%d)"
                % (data.r + data.m + data.n, data.r, data.m, data.n))
        out.add("ex %s" % " ".join(str(k + 1) for k in data.ex))
        out.add("eps %s" % " ".join(str(e) for e in data.eps))
        out.extend(matrix_lines("b", matrix))
    elif config.catalog_kind == "qmatrix":
        qm = cat.quantum_matrices(*config.word[:2]) if len(config.word) >= 2 else None
        if qm is None:
            raise ValueError("catalog qmatrix needs --word M,N")
        out.add(algebra_to_text(qm.presentation).rstrip("\n"))
    else:
        raise ValueError("unknown catalog kind %r" % config.catalog_kind)
    out.emit()
    return 0


def _cmd_poisson(config: JobConfig) -> int:
    from .poisson import (classical_seed_and_gsv_check, poisson_prime_sequence,
                          validate_poisson)
    pres, names = _load_poisson(config)
    report = validate_poisson(pres, nilpotency_cap=config.nilp_cap)
    out = _Lines(config)
    for check in report.checks:
        line = "check %s %s" % (check.name, "pass" if check.ok else "FAIL")
        if check.detail and not check.ok:
            line += " | " + check.detail
        out.add(line)
    if not (report.ok and report.symmetric):
        out.emit()
        return 1
    seq = poisson_prime_sequence(pres, degree_cap=config.degree_cap)
    out.add("rank %d" % seq.rank)
    out.add("eta %s" % " ".join(str(v) for v in seq.eta))
    out.add(index_map_line("pred", seq.pred))
    out.add(index_map_line("succ", seq.succ, high=True))
    for k in range(seq.n):
        out.add("y %d %s" % (k + 1, cpoly_to_text(seq.y[k], None if config.fmt == "machine" else names)))
    seed_report = classical_seed_and_gsv_check(pres, seq)
    out.add("log-canonical pass")
    out.add("ex %s" % " ".join(str(k + 1) for k in seed_report.ex))
    out.add("dstar %s" % " ".join(str(seed_report.dstar[k]) for k in seed_report.ex))
    out.extend(matrix_lines("b", seed_report.b))
    out.emit()
    return 0


# -- argument parsing --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnca",
        description="Exact quantum cluster seeds from iterated skew-polynomial algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool = True):
        if needs_input:
            p.add_argument("--preset", help="built-in algebra, e.g. qmatrix:2x2")
            p.add_argument("--input", dest="input_path", help="algebra file path")
            p.add_argument("--tau", help="reindexing permutation, e.g. 4,3,2,1")
        p.add_argument("--degree-cap", type=int, default=12)
        p.add_argument("--nilp-cap", type=int, default=64)
        p.add_argument("--format", dest="fmt", choices=("text", "machine"),
                       default="text")

    common(sub.add_parser("validate", help="check the defining conditions"))
    common(sub.add_parser("primes", help="compute the prime-element ladder"))
    common(sub.add_parser("seed", help="conditions, exchange matrix, initial seed"))
    mut = sub.add_parser("mutate", help="apply a mutation sequence")
    common(mut)
    mut.add_argument("--sequence", default="", help="1-based directions, e.g. 1,2,1")
    exp = sub.add_parser("explore", help="breadth-first exchange graph")
    common(exp)
    exp.add_argument("--depth", type=int, default=3)
    exp.add_argument("--check-membership", action="store_true")
    cata = sub.add_parser("catalog", help="closed-form exchange matrices")
    cata.add_argument("kind", choices=("schubert", "bz", "qmatrix"))
    cata.add_argument("--type", dest="cartan_type", help="Cartan type, e.g. A2")
    cata.add_argument("--word", default="", help="word letters, e.g. 1,2,1")
    cata.add_argument("--word-w", default="", help="letters of w (bz)")
    cata.add_argument("--word-v", default="", help="letters of v (bz)")
    cata.add_argument("--format", dest="fmt", choices=("text", "machine"),
                      default="text")
    poi = sub.add_parser("poisson", help="semiclassical pipeline")
    common(poi)
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "primes": _cmd_primes,
    "seed": _cmd_seed,
    "mutate": _cmd_mutate,
    "explore": _cmd_explore,
    "catalog": _cmd_catalog,
    "poisson": _cmd_poisson,
}


def run(config: JobConfig) -> int:
    """Execute one job; returns the process exit status."""
    if config.degree_cap <= 0 or config.nilp_cap <= 0 or config.depth < 0:
        raise ValueError("caps must be positive and depth nonnegative")
    try:
        return _HANDLERS[config.command](config)
    except QncaError as exc:
        sys.stdout.write("error %s: %s\n" % (type(exc).__name__, exc))
        return 1
    except (OSError, ValueError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return 2


def main(argv=None) -> int:
    parser = _build_parser()
    namespace = parser.parse_args(argv)
    threads = max(1, int(os.environ.get("QNCA_THREADS", "1") or "1"))
    config = JobConfig(
        command=namespace.command,
        preset=getattr(namespace, "preset", None),
        input_path=getattr(namespace, "input_path", None),
        degree_cap=getattr(namespace, "degree_cap", 12),
        nilp_cap=getattr(namespace, "nilp_cap", 64),
        depth=getattr(namespace, "depth", 3),
        check_membership=getattr(namespace, "check_membership", False),
        fmt=getattr(namespace, "fmt", "text"),
        tau=_parse_int_list(getattr(namespace, "tau", "") or "") or None,
        sequence=_parse_int_list(getattr(namespace, "sequence", "") or ""),
        threads=threads,
        catalog_kind=getattr(namespace, "kind", None),
        cartan_type=getattr(namespace, "cartan_type", None),
        word=_parse_int_list(getattr(namespace, "word", "") or ""),
        word_w=_parse_int_list(getattr(namespace, "word_w", "") or ""),
        word_v=_parse_int_list(getattr(namespace, "word_v", "") or ""),
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
