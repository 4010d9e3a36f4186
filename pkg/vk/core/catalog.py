"""
Catalog module for named complexes, end-to-end pipelines and report verification.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union

import networkx as nx

from vk.config import Config
from vk.core.complexes import (
    bowtie,
    complex_FKT,
    complex_Xk,
    delta62,
    neighborhoods,
    pseudo_projective_plane,
    singular_set,
)
from vk.core.freegroup import magnus_of_text, parse_word
from vk.core.nilpotent import (
    RootFailure,
    boundary_word_text,
    immersion_boundary_word,
    kth_root_mod_gamma,
    obstruction_depth,
    proposition42_word,
    verify_root,
)
from vk.core.octa import MinorWitness, is_flag, octahedralize
from vk.core.pgroup import certify_not_kth_power, verify_baumslag
from vk.core.spatial import conway_gordon_omega
from vk.core.vankampen import ObstructionResult, VanKampenSolver, verify_obstruction
from vk.entities.complex import SimplicialComplex
from vk.entities.report import Report
from vk.entities.spatial_graph import SpatialGraph
from vk.exceptions import InputError, VKError
from vk.utils.logger import get_logger

logger = get_logger(__name__)

CATALOG_NAMES = ("delta62", "bowtie", "pk:<k>", "xk:<k>", "fkt:<word>", "opk:<k>")


def _int_argument(name: str, value: str) -> int:
    try:
        return int(value)
    except ValueError as e:
        raise InputError(f"Catalog entry {name!r} needs an integer, got {value!r}") from e


def catalog(name: str, config: Optional[Config] = None) -> SimplicialComplex:
    """
    Build a named complex.

    Names are ``delta62``, ``bowtie``, ``pk:<k>``, ``xk:<k>``, ``fkt:<word>``
    and ``opk:<k>`` (the octahedralized P_k).

    Raises:
        InputError: For unknown names or bad parameters.
    """
    config = config or Config()
    m = config.get("complexes.boundary_subdivision")
    collars = config.get("complexes.max_collars")
    head, _, argument = name.partition(":")
    if head == "delta62" and not argument:
        return delta62()
    if head == "bowtie" and not argument:
        return bowtie()
    if head == "pk" and argument:
        return pseudo_projective_plane(_int_argument(name, argument), m)
    if head == "xk" and argument:
        return complex_Xk(_int_argument(name, argument), m, collars)
    if head == "fkt" and argument:
        return complex_FKT(parse_word(argument, rank=2), collars)
    if head == "opk" and argument:
        return octahedralize(pseudo_projective_plane(_int_argument(name, argument), m))
    raise InputError(f"Unknown complex {name!r}; known: {', '.join(CATALOG_NAMES)}")


def complex_reference(source: Union[str, SimplicialComplex]) -> Union[str, Dict[str, Any]]:
    """How a certificate refers to its complex: a catalog name or the full JSON form."""
    return source if isinstance(source, str) else source.to_dict()


def resolve_complex(reference: Union[str, Dict[str, Any]], config: Optional[Config] = None) -> SimplicialComplex:
    if isinstance(reference, str):
        return catalog(reference, config)
    if isinstance(reference, dict):
        return SimplicialComplex.from_dict(reference)
    raise InputError(f"Cannot resolve complex reference {reference!r}")


def obstruction_certificate(reference: Union[str, SimplicialComplex], result: ObstructionResult) -> Dict[str, Any]:
    return {"kind": "obstruction", "complex": complex_reference(reference), **result.to_dict()}


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

def pipeline_xk_report(k: int, max_n: int = 3, seed: int = 0, config: Optional[Config] = None) -> Report:
    """
    Obstruction of ``X_k``, non-power certificates for ``a^k b^k`` and boundary words.

    Args:
        k: Degree of the pseudo-projective plane, at least 1.
        max_n: Largest class for the boundary-word checks.
        seed: Seed of the generic map.
        config: Configuration; defaults are used when omitted.

    Returns:
        Report: Verdicts and certificates. A nonvanishing obstruction
        short-circuits the group-theoretic steps.
    """
    if k < 1:
        raise InputError(f"pipeline-xk needs k >= 1, got {k}")
    if max_n < 1:
        raise InputError(f"max_n must be at least 1, got {max_n}")
    config = config or Config()
    name = f"xk:{k}"
    report = Report(command="pipeline-xk", seed=seed, inputs={"k": k, "max_n": max_n, "complex": name})

    solver = VanKampenSolver(catalog(name, config), config)
    over_z2 = solver.obstruction("Z2", seed)
    report.add_certificate(obstruction_certificate(name, over_z2))
    verdicts: Dict[str, Any] = {"obstruction": {"Z2": "vanishes" if over_z2.vanishes else "nonvanishing"}}
    report.verdicts = verdicts
    if not over_z2.vanishes:
        verdicts["obstruction"]["Z"] = "nonvanishing"
        verdicts["short_circuit"] = True
        logger.info(f"X_{k}: obstruction nonvanishing, stopping")
        return report
    over_z = solver.obstruction("Z", seed, over_z2.map)
    report.add_certificate(obstruction_certificate(name, over_z))
    verdicts["obstruction"]["Z"] = "vanishes" if over_z.vanishes else "nonvanishing"
    if not over_z.vanishes:
        verdicts["short_circuit"] = True
        return report
    verdicts["short_circuit"] = False

    if k == 1:
        verdicts["non_power"] = "not applicable: a b is a first power"
        return report

    depth = obstruction_depth(k, k, k, config.get("nilpotent.max_class"))
    report.add_certificate(depth.to_dict(), kind="depth")
    verdicts["depth"] = depth.depth
    baumslag = certify_not_kth_power(k, k, k, config.get("pgroup.max_order"))
    report.add_certificate(baumslag.to_dict())
    verdicts["non_power"] = {"p": baumslag.p, "group_order": baumslag.order}

    if k % 2:
        boundary: Dict[str, bool] = {}
        for n in range(1, max_n + 1):
            word = immersion_boundary_word(k, n)
            report.add_certificate(word.to_dict(), kind="boundary_word")
            boundary[str(n)] = word.trivial
        verdicts["boundary_words"] = boundary
    return report


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class CheckRecord:
    index: int
    kind: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"index": self.index, "kind": self.kind, "ok": self.ok, "detail": self.detail}


@dataclass
class VerificationResult:
    checks: List[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _check_obstruction(data: Dict[str, Any], config: Config) -> bool:
    return verify_obstruction(resolve_complex(data["complex"], config), data)


def _check_root(data: Dict[str, Any], config: Config) -> bool:
    return verify_root(str(data["word"]), str(data["root"]), int(data["k"]), int(data["n"]))


def _check_failure(data: Dict[str, Any], config: Config) -> bool:
    n = int(data["n"])
    level = int(data["level"])
    if not 1 <= level <= n:
        return False
    result = kth_root_mod_gamma(str(data["word"]), int(data["k"]), n)
    return (
        isinstance(result, RootFailure)
        and result.level == level
        and result.coordinates == data["coordinates"]
    )


def _check_depth(data: Dict[str, Any], config: Config) -> bool:
    fresh = obstruction_depth(int(data["r"]), int(data["s"]), int(data["k"]), int(data["max_class"]))
    return {"kind": "depth", **fresh.to_dict()} == data


def _check_baumslag(data: Dict[str, Any], config: Config) -> bool:
    return verify_baumslag(data, config.get("pgroup.max_order"))


def _check_boundary_word(data: Dict[str, Any], config: Config) -> bool:
    k = int(data["k"])
    n = int(data["n"])
    root = data["root"]
    if (int(root["k"]), int(root["n"]), str(root["word"])) != (k, n, proposition42_word(k, n)):
        return False
    if not verify_root(str(root["word"]), str(root["root"]), k, n):
        return False
    text = str(data["word"])
    if text != boundary_word_text(str(root["root"]), k, n):
        return False
    return (
        magnus_of_text(text, n).is_one_below(n + 1) == bool(data["trivial"])
        and magnus_of_text(text, n + 1).is_one_below(n + 2) == bool(data["trivial_next_class"])
    )


def _check_linking(data: Dict[str, Any], config: Config) -> bool:
    graph = SpatialGraph.from_dict(data["graph"])
    omega = conway_gordon_omega(graph, int(data.get("seed", 0)) + 1)
    return omega.profile == data["linking_numbers"]


def _check_k44(data: Dict[str, Any], config: Config) -> bool:
    graph = nx.Graph()
    graph.add_edges_from(tuple(e) for e in data["edges"])
    witness = data["witness"]
    if witness is None:
        return False
    minor = MinorWitness(
        [frozenset(s) for s in witness["left"]],
        [frozenset(s) for s in witness["right"]],
    )
    return minor.verify(graph)


def _check_flag(data: Dict[str, Any], config: Config) -> bool:
    check = is_flag(resolve_complex(data["complex"], config))
    return check.to_dict() == {"flag": data["flag"], "clique": data["clique"]}


def _check_prop52(data: Dict[str, Any], config: Config) -> bool:
    complex_ = resolve_complex(data["complex"], config)
    radius = int(data["radius"])
    singular = set(singular_set(complex_).vertices)
    if "alpha" in complex_.tags:
        singular |= complex_.tag_vertices("alpha")
    a = neighborhoods(complex_, int(data["v"]), radius).vertices
    b = neighborhoods(complex_, int(data["v_hat"]), radius).vertices
    return not (a & b) and not (a & singular) and not (b & singular)


CHECKERS: Dict[str, Callable[[Dict[str, Any], Config], bool]] = {
    "obstruction": _check_obstruction,
    "root": _check_root,
    "failure": _check_failure,
    "depth": _check_depth,
    "baumslag": _check_baumslag,
    "boundary_word": _check_boundary_word,
    "linking": _check_linking,
    "k44": _check_k44,
    "flag": _check_flag,
    "prop52": _check_prop52,
}


def verify_report(report: Report, config: Optional[Config] = None) -> VerificationResult:
    """
    Re-execute every certificate of a report.

    Malformed or failing certificates are recorded as failed checks.
    """
    config = config or Config()
    result = VerificationResult()
    for index, certificate in enumerate(report.certificates):
        data = certificate.payload()
        checker = CHECKERS.get(certificate.kind)
        if checker is None:
            result.checks.append(CheckRecord(index, certificate.kind, False, "unknown certificate kind"))
            continue
        try:
            ok = checker(data, config)
            detail = "" if ok else "recomputation disagrees"
        except (KeyError, TypeError, ValueError) as e:
            ok, detail = False, f"malformed certificate: {e}"
        except VKError as e:
            ok, detail = False, str(e)
        result.checks.append(CheckRecord(index, certificate.kind, ok, detail))
        logger.debug(f"certificate {index} ({certificate.kind}): {'ok' if ok else detail}")
    return result
