"""
Command-line interface for the vk toolkit.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from vk import __version__
from vk.config import Config
from vk.core.catalog import (
    catalog,
    complex_reference,
    obstruction_certificate,
    pipeline_xk_report,
    verify_report,
)
from vk.core.complexes import barycentric_subdivision, homology, singular_set, validate
from vk.core.freegroup import (
    is_kth_power,
    lcs_depth,
    magnus,
    modified_boundary_word,
    naive_boundary_word,
    parse_word,
    remark1_identity,
    remark2_identity,
)
from vk.core.nilpotent import (
    immersion_boundary_word,
    kth_root_mod_gamma,
    obstruction_depth,
    proposition42_witness,
)
from vk.core.octa import (
    has_K44_minor,
    is_flag,
    octahedralize,
    octahedralize_graph,
    octahedralized_cycle,
    prop52_hypothesis,
    vertex_link_graph,
)
from vk.core.pgroup import certify_not_kth_power
from vk.core.spatial import conway_gordon_omega, random_straight_k6, twisted_K6
from vk.core.vankampen import RINGS, VanKampenSolver
from vk.entities.complex import SimplicialComplex
from vk.entities.report import Report
from vk.entities.spatial_graph import SpatialGraph
from vk.exceptions import BudgetExceeded, DegenerateProjection, InputError, InvariantViolation, VKError
from vk.utils.logger import get_logger, set_level

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

IDENTITIES = ("remark1", "remark2", "naive", "modified")


def create_parser() -> argparse.ArgumentParser:
    """Create command-line argument parser."""
    parser = argparse.ArgumentParser(
        prog="vk",
        description="vk - van Kampen obstructions, nilpotent roots and spatial K6 computations"
    )

    # Global options
    parser.add_argument(
        "--config",
        type=str,
        help="Path to configuration file"
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        help="Enable verbose output"
    )

    # Options shared by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="Print a readable summary instead of JSON")
    common.add_argument("--output", "-o", type=str, help="Also write the JSON report to this path")
    common.add_argument("--seed", type=int, help="Seed for every random choice (default from config)")
    common.add_argument("--timing", action="store_true", help="Record wall-clock timing in the report")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Build command
    build_parser = subparsers.add_parser("build", parents=[common], help="Build a catalog complex and report its invariants")
    build_parser.add_argument("complex", nargs="?", help="Catalog name: delta62, bowtie, pk:K, xk:K, fkt:WORD, opk:K")
    build_parser.add_argument("--input", type=str, help="Complex JSON file instead of a catalog name")
    build_parser.add_argument("--subdivide", type=int, default=0, help="Rounds of barycentric subdivision")
    build_parser.add_argument("--emit-complex", action="store_true", help="Include the complex JSON in the report")

    # Obstruction command
    obstruction_parser = subparsers.add_parser("obstruction", parents=[common], help="Decide the van Kampen obstruction")
    obstruction_parser.add_argument("complex", nargs="?", help="Catalog name")
    obstruction_parser.add_argument("--input", type=str, help="Complex JSON file instead of a catalog name")
    obstruction_parser.add_argument("--ring", choices=RINGS + ("both",), default="both", help="Coefficient ring")
    obstruction_parser.add_argument("--seeds", type=int, default=1, help="Number of independent generic maps")
    obstruction_parser.add_argument("--check-maps", action="store_true",
                                    help="Also check that vankampen.seeds maps agree modulo finger moves")

    # Word command
    word_parser = subparsers.add_parser("word", parents=[common], help="Reduce a word and locate it in the lower central series")
    word_parser.add_argument("word", nargs="?", help="Word such as \"[a,b]^2 a^-1\"")
    word_parser.add_argument("--identity", choices=IDENTITIES, help="Use one of the built-in identity words")
    word_parser.add_argument("--degree", type=int, default=4, help="Magnus truncation degree")
    word_parser.add_argument("--power", type=int, help="Search the free group for a root of this order")

    # Root command
    root_parser = subparsers.add_parser("root", parents=[common], help="k-th root modulo gamma_{n+1}")
    root_parser.add_argument("word", help="Word to take the root of")
    root_parser.add_argument("--k", type=int, required=True, help="Root order")
    root_parser.add_argument("--n", type=int, required=True, help="Nilpotency class")
    root_parser.add_argument("--reverse", action="store_true", help="Multiply each level's factors in reverse order")

    # Prop42 command
    prop42_parser = subparsers.add_parser("prop42", parents=[common], help="Root of a^p b^(p^(2^(n-1))) in class n")
    prop42_parser.add_argument("--p", type=int, required=True, help="Prime, or any k >= 2")
    prop42_parser.add_argument("--n", type=int, required=True, help="Nilpotency class")
    prop42_parser.add_argument("--boundary", action="store_true", help="Also build the immersion boundary word")

    # Baumslag command
    baumslag_parser = subparsers.add_parser("baumslag", parents=[common], help="Certify that a^r b^s is not a k-th power")
    baumslag_parser.add_argument("--r", type=int, required=True, help="Exponent of a")
    baumslag_parser.add_argument("--s", type=int, required=True, help="Exponent of b")
    baumslag_parser.add_argument("--k", type=int, required=True, help="Root order")
    baumslag_parser.add_argument("--depth", action="store_true", help="Cross-check with the nilpotent root solver")

    # Conway-Gordon command
    cg_parser = subparsers.add_parser("cg", parents=[common], help="Linking numbers of an embedded K6")
    source = cg_parser.add_mutually_exclusive_group()
    source.add_argument("--input", type=str, help="Spatial graph JSON file")
    source.add_argument("--twisted", type=int, help="Build the K6 with Lk(123, 456) = K")
    source.add_argument("--random", action="store_true", help="Random straight-line K6 (default)")

    # Octa command
    octa_parser = subparsers.add_parser("octa", parents=[common], help="Octahedralization, flag and minor checks")
    octa_parser.add_argument("complex", nargs="?", help="Catalog name")
    octa_parser.add_argument("--input", type=str, help="Complex JSON file instead of a catalog name")
    octa_parser.add_argument("--op", choices=("build", "flag", "prop52", "k44"), required=True, help="Operation")
    octa_parser.add_argument("--subdivide", type=int, default=0, help="Rounds of barycentric subdivision first")
    octa_parser.add_argument("--cycle", type=int, help="For k44: use the octahedralized n-cycle")
    octa_parser.add_argument("--vertex", type=int, help="For k44: octahedralize the link of this vertex")
    octa_parser.add_argument("--radius", type=int, default=2, help="For prop52: neighbourhood radius")
    octa_parser.add_argument("--emit-complex", action="store_true", help="Include the complex JSON in the report")

    # Pipeline command
    pipeline_parser = subparsers.add_parser("pipeline-xk", parents=[common], help="End-to-end computation for X_k")
    pipeline_parser.add_argument("--k", type=int, required=True, help="Degree of the pseudo-projective plane")
    pipeline_parser.add_argument("--max-n", type=int, default=3, help="Largest class for boundary words")

    # Verify command
    verify_parser = subparsers.add_parser("verify", parents=[common], help="Re-check every certificate of a report")
    verify_parser.add_argument("report", help="Report JSON file")

    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e


def _seed(args: argparse.Namespace, config: Config) -> int:
    return args.seed if args.seed is not None else int(config.get("seed", 0))


def _load_complex(args: argparse.Namespace, config: Config) -> Tuple[Union[str, Dict[str, Any]], SimplicialComplex]:
    if getattr(args, "input", None):
        complex_ = SimplicialComplex.from_json(_read_text(args.input))
    elif args.complex:
        complex_ = catalog(args.complex, config)
    else:
        raise InputError("Give a catalog name or --input")
    rounds = getattr(args, "subdivide", 0) or 0
    if rounds < 0:
        raise InputError(f"--subdivide must be non-negative, got {rounds}")
    for _ in range(rounds):
        complex_ = barycentric_subdivision(complex_)
    if args.input or rounds:
        return complex_reference(complex_), complex_
    return args.complex, complex_


def _new_report(command: str, seed: Optional[int] = None, **inputs: Any) -> Report:
    report = Report(command=command, seed=seed, inputs=inputs)
    report.versions["vk"] = __version__
    return report


def _summary(report: Report) -> str:
    lines = [f"vk {report.command}"]
    lines.append("-" * 40)
    for key, value in report.inputs.items():
        lines.append(f"{key:>20}: {value}")
    lines.append("-" * 40)
    for key, value in report.verdicts.items():
        if isinstance(value, dict) and len(str(value)) > 60:
            lines.append(f"{key:>20}:")
            for sub, item in value.items():
                lines.append(f"{'':>22}{sub}: {item}")
        else:
            lines.append(f"{key:>20}: {value}")
    if report.certificates:
        lines.append("-" * 40)
        kinds = [c.kind for c in report.certificates]
        lines.append(f"{'certificates':>20}: {len(kinds)} ({', '.join(sorted(set(kinds)))})")
    if report.timing:
        lines.append(f"{'seconds':>20}: {report.timing['seconds']:.3f}")
    return "\n".join(lines)


def _emit(report: Report, args: argparse.Namespace, started: float) -> int:
    if args.timing:
        report.timing = {"seconds": round(time.perf_counter() - started, 6)}
    text = report.to_json()
    if args.output:
        output_path = Path(args.output)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(text + "\n", encoding="utf-8")
    print(_summary(report) if args.human else text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def run_build(args: argparse.Namespace, logger: logging.Logger) -> int:
    """
    Build a complex and report its invariants.

    Args:
        args: Command-line arguments.
        logger: Logger instance.

    Returns:
        int: Exit code.
    """
    started = time.perf_counter()
    config = Config(args.config)
    reference, complex_ = _load_complex(args, config)
    groups = homology(complex_)
    singular = singular_set(complex_)
    report = _new_report("build", None, complex=args.complex or args.input, subdivide=args.subdivide)
    report.verdicts = {
        "f_vector": list(complex_.f_vector()),
        "euler_characteristic": complex_.euler_characteristic(),
        "homology": {f"H{d}": groups.describe(d) for d in range(3)},
        "singular_set": {"vertices": len(singular.vertices), "edges": len(singular.edges)},
        "problems": validate(complex_),
        "flag": is_flag(complex_).flag,
        "tags": sorted(complex_.tags),
    }
    if args.emit_complex:
        report.verdicts["complex"] = complex_.to_dict()
    logger.info(f"Built {reference if isinstance(reference, str) else 'complex'}: f-vector {complex_.f_vector()}")
    return _emit(report, args, started)


def run_obstruction(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Decide the obstruction over the requested rings for one or more generic maps."""
    started = time.perf_counter()
    config = Config(args.config)
    seed = _seed(args, config)
    if args.seeds < 1:
        raise InputError(f"--seeds must be positive, got {args.seeds}")
    reference, complex_ = _load_complex(args, config)
    rings = list(RINGS) if args.ring == "both" else [args.ring]
    solver = VanKampenSolver(complex_, config)
    report = _new_report("obstruction", seed, complex=args.complex or args.input, rings=rings, seeds=args.seeds)
    verdicts: Dict[str, Any] = {ring: [] for ring in rings}
    for offset in range(args.seeds):
        map_ = solver.random_map(seed + offset)
        for ring in rings:
            result = solver.obstruction(ring, seed + offset, map_)
            report.add_certificate(obstruction_certificate(reference, result))
            verdicts[ring].append("vanishes" if result.vanishes else "nonvanishing")
    for ring in rings:
        # the verdict does not depend on the map
        if len(set(verdicts[ring])) != 1:
            raise InvariantViolation(f"Maps disagree on the obstruction over {ring}: {verdicts[ring]}")
        verdicts[ring] = verdicts[ring][0]
    verdicts["pair_count"] = len(solver.pairs)
    verdicts["finger_moves"] = solver.matrix.ncols
    if args.check_maps:
        verdicts["map_independence"] = solver.map_independence()
    report.verdicts = verdicts
    return _emit(report, args, started)


def _identity_word(name: str) -> str:
    if name == "remark1":
        product_, cube = remark1_identity()
        return f"({product_.to_text()}) ({cube.to_text()})^-1"
    if name == "remark2":
        return remark2_identity().to_text()
    if name == "naive":
        return naive_boundary_word().to_text()
    return modified_boundary_word().to_text()


def run_word(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Reduce a word and report its lower central series depth."""
    started = time.perf_counter()
    if args.identity:
        text = _identity_word(args.identity)
    elif args.word:
        text = args.word
    else:
        raise InputError("Give a word or --identity")
    if args.degree < 1:
        raise InputError(f"--degree must be positive, got {args.degree}")
    word = parse_word(text)
    depth = lcs_depth(word, args.degree)
    report = _new_report("word", None, word=text, degree=args.degree, identity=args.identity)
    report.verdicts = {
        "reduced": word.to_text() or "1",
        "length": word.length(),
        "exponent_sums": list(word.exponent_sums()),
        "lcs_depth": depth if depth is not None else f">{args.degree}",
        "magnus": magnus(word, args.degree).to_dict(),
    }
    if args.power is not None:
        root = is_kth_power(word, args.power)
        report.verdicts["power"] = {"k": args.power, "root": root.to_text() if root is not None else None}
    return _emit(report, args, started)


def run_root(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Compute a k-th root modulo gamma_{n+1}."""
    started = time.perf_counter()
    result = kth_root_mod_gamma(args.word, args.k, args.n, reverse_order=args.reverse)
    report = _new_report("root", None, word=args.word, k=args.k, n=args.n)
    report.add_certificate(result.to_dict())
    report.verdicts = {"exists": result.succeeded}
    if result.succeeded:
        report.verdicts["root"] = result.to_dict()["root"]
    else:
        report.verdicts["failure_level"] = result.to_dict()["level"]
    return _emit(report, args, started)


def run_prop42(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Solve for the root of a^p b^(p^(2^(n-1))) and optionally the boundary word."""
    started = time.perf_counter()
    certificate = proposition42_witness(args.p, args.n)
    report = _new_report("prop42", None, p=args.p, n=args.n)
    report.add_certificate(certificate.to_dict())
    report.verdicts = {"root": certificate.root_text, "verified": certificate.verified}
    if args.boundary:
        word = immersion_boundary_word(args.p, args.n)
        report.add_certificate(word.to_dict(), kind="boundary_word")
        report.verdicts["boundary_word"] = {"trivial": word.trivial, "trivial_next_class": word.trivial_next_class}
    return _emit(report, args, started)


def run_baumslag(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Certify that a^r b^s is not a k-th power by exhaustive search in a p-group."""
    started = time.perf_counter()
    config = Config(args.config)
    certificate = certify_not_kth_power(args.r, args.s, args.k, config.get("pgroup.max_order"))
    report = _new_report("baumslag", None, r=args.r, s=args.s, k=args.k)
    report.add_certificate(certificate.to_dict())
    report.verdicts = {
        "not_a_power": True,
        "p": certificate.p,
        "group_order": certificate.order,
        "enumerated": certificate.enumerated,
    }
    if args.depth:
        depth = obstruction_depth(args.r, args.s, args.k, config.get("nilpotent.max_class"))
        report.add_certificate(depth.to_dict(), kind="depth")
        report.verdicts["depth"] = depth.depth
    return _emit(report, args, started)


def run_cg(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Linking numbers of the ten disjoint triangle pairs of an embedded K6."""
    started = time.perf_counter()
    config = Config(args.config)
    seed = _seed(args, config)
    if args.input:
        graph = SpatialGraph.from_json(_read_text(args.input))
        source = args.input
    elif args.twisted is not None:
        graph = twisted_K6(args.twisted, seed, config)
        source = f"twisted:{args.twisted}"
    else:
        graph = random_straight_k6(seed, config.get("spatial.coordinate_range"), config.get("spatial.max_attempts"))
        source = "random"
    omega = conway_gordon_omega(graph, seed)
    report = _new_report("cg", seed, source=source)
    report.verdicts = omega.to_dict()
    report.add_certificate({
        "kind": "linking",
        "seed": seed,
        "graph": graph.to_dict(),
        "linking_numbers": dict(omega.profile),
    })
    return _emit(report, args, started)


def run_octa(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Octahedralize, check flagness, search K44 minors or the disjoint-neighbourhood hypothesis."""
    started = time.perf_counter()
    config = Config(args.config)
    report = _new_report("octa", None, op=args.op, complex=args.complex or args.input, subdivide=args.subdivide)

    if args.op == "k44" and args.cycle is not None:
        graph = octahedralized_cycle(args.cycle)
        report.inputs["cycle"] = args.cycle
    else:
        reference, complex_ = _load_complex(args, config)

    if args.op == "build":
        result = octahedralize(complex_)
        report.verdicts = {
            "f_vector": list(result.f_vector()),
            "base_f_vector": list(complex_.f_vector()),
            "flag": is_flag(result).flag,
        }
        if args.emit_complex:
            report.verdicts["complex"] = result.to_dict()
    elif args.op == "flag":
        check = is_flag(complex_)
        report.verdicts = check.to_dict()
        report.add_certificate({"kind": "flag", "complex": reference, **check.to_dict()})
    elif args.op == "prop52":
        evidence = prop52_hypothesis(complex_, args.radius)
        report.verdicts = {"found": evidence is not None}
        if evidence is not None:
            report.verdicts.update({"v": evidence.v, "v_hat": evidence.v_hat, "link_sizes": list(evidence.link_sizes)})
            report.add_certificate({"kind": "prop52", "complex": reference, **evidence.to_dict()})
    else:
        if args.cycle is None:
            if args.vertex is None:
                raise InputError("k44 needs --cycle N or --vertex V")
            graph = octahedralize_graph(vertex_link_graph(complex_, args.vertex))
            report.inputs["vertex"] = args.vertex
        witness = has_K44_minor(graph, config.get("octa.max_minor_vertices"))
        report.verdicts = {
            "vertices": graph.number_of_nodes(),
            "edges": graph.number_of_edges(),
            "minor": witness is not None,
        }
        report.add_certificate({
            "kind": "k44",
            "edges": sorted([sorted(e) for e in graph.edges]),
            "witness": witness.to_dict() if witness is not None else None,
        })
    return _emit(report, args, started)


def run_pipeline(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Run the X_k pipeline."""
    started = time.perf_counter()
    config = Config(args.config)
    report = pipeline_xk_report(args.k, args.max_n, _seed(args, config), config)
    report.versions["vk"] = __version__
    return _emit(report, args, started)


def run_verify(args: argparse.Namespace, logger: logging.Logger) -> int:
    """Re-check every certificate of a stored report."""
    started = time.perf_counter()
    config = Config(args.config)
    stored = Report.from_json(_read_text(args.report))
    result = verify_report(stored, config)
    report = _new_report("verify", None, report=args.report, command_checked=stored.command)
    report.verdicts = result.to_dict()
    if not result.passed:
        logger.warning(f"{sum(1 for c in result.checks if not c.ok)} certificate(s) failed")
    return _emit(report, args, started)


COMMANDS = {
    "build": run_build,
    "obstruction": run_obstruction,
    "word": run_word,
    "root": run_root,
    "prop42": run_prop42,
    "baumslag": run_baumslag,
    "cg": run_cg,
    "octa": run_octa,
    "pipeline-xk": run_pipeline,
    "verify": run_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the CLI.

    Args:
        argv: Optional list of command-line arguments.

    Returns:
        int: Exit code.
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    # Setup logging
    config = Config(args.config)
    log_level = logging.DEBUG if args.verbose else logging.getLevelName(str(config.get("logging.level", "INFO")).upper())
    if not isinstance(log_level, int):
        log_level = logging.INFO
    logger = get_logger(__name__, level=log_level, log_file=config.get("logging.file"))
    set_level(log_level)

    handler = COMMANDS.get(args.command)
    if handler is None:
        parser.print_help()
        return EXIT_INPUT

    try:
        return handler(args, logger)
    except InputError as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT
    except (BudgetExceeded, DegenerateProjection) as e:
        logger.error(f"Budget exceeded: {e}")
        return EXIT_BUDGET
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}")
        return EXIT_INVARIANT
    except VKError as e:
        logger.error(str(e))
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
