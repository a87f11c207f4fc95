"""Named interconnection gallery used by the benchmark table and tests.

Fixture names read mechanically: dissipative edges are "dampers" (resistor
couplings in the circuit picture), restorative edges are "springs"
(inductor couplings).  The gallery spans every verdict class: universally
synchronizing shapes, shapes with a sign witness, and shapes that fail the
existence test outright, across path / cycle / tree / general unions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import Interconnection
from .laplacians import WeightedLaplacian, laplacian


@dataclass(frozen=True)
class Fixture:
    name: str
    ic: Interconnection
    note: str


def braced_chain() -> Interconnection:
    """Four-node spring chain 1-2-3-4 with a damper brace across 1-3.

    The smallest worked instance of a non-universal interconnection: the
    chain admits the sign witness x = (2, -1, 1)."""
    return Interconnection(4, ((1, 3),), ((1, 2), (2, 3), (3, 4)))


def twin_triangles() -> Interconnection:
    """Two triangles sharing the spring edge 1-3; dampers close each one.

    Universal: every distribution is forced down to the trivial one."""
    return Interconnection(4, ((1, 4), (2, 3)), ((1, 2), (1, 3), (3, 4)))


def alternating_cycle(q: int) -> Interconnection:
    """Cycle on q vertices (q even) with strictly alternating edge kinds.

    Edge (i, i+1) is a damper for odd i, a spring for even i; the closing
    edge {q, 1} continues the alternation.  Universal exactly when q/2 is
    odd."""
    if q < 4 or q % 2:
        raise ValueError(f"alternation needs an even vertex count >= 4, got {q}")
    ring = [(i, i + 1) for i in range(1, q)] + [(1, q)]
    d_edges = tuple(ring[i] for i in range(0, q, 2))
    r_edges = tuple(ring[i] for i in range(1, q, 2))
    return Interconnection(q, d_edges, r_edges)


def circuit_laplacians(
    conductance: float | Fraction = 1,
    inductances: Sequence[float | Fraction] = (1, 1, 1),
) -> tuple[WeightedLaplacian, WeightedLaplacian]:
    """Coupling pair of the four-oscillator circuit on the braced chain:
    one resistor of the given conductance across 1-3, and inductors along
    the chain contributing their reciprocals as spring weights."""
    if len(inductances) != 3:
        raise ValueError(f"the chain has 3 inductors, got {len(inductances)}")
    ic = braced_chain()
    d = laplacian(ic.q, ic.dissipative_edges, [Fraction(conductance)])
    r = laplacian(
        ic.q, ic.restorative_edges, [1 / Fraction(value) for value in inductances]
    )
    return d, r


def gallery() -> tuple[Fixture, ...]:
    """The benchmark corpus, in fixed order."""
    return (
        Fixture("braced-chain", braced_chain(), "spring chain with a damper brace"),
        Fixture("twin-triangles", twin_triangles(), "two triangles sharing a spring"),
        Fixture(
            "covered-path",
            Interconnection(5, ((2, 3),), ((1, 2), (3, 4), (4, 5))),
            "path whose springs touch every vertex",
        ),
        Fixture(
            "gapped-path-mid",
            Interconnection(5, ((2, 3), (3, 4)), ((1, 2), (4, 5))),
            "path with a spring-free interior vertex",
        ),
        Fixture(
            "gapped-path-end",
            Interconnection(5, ((1, 2),), ((2, 3), (3, 4), (4, 5))),
            "path with a spring-free end vertex",
        ),
        Fixture("alternating-cycle-4", alternating_cycle(4), "alternating 4-cycle"),
        Fixture("alternating-cycle-6", alternating_cycle(6), "alternating 6-cycle"),
        Fixture("alternating-cycle-8", alternating_cycle(8), "alternating 8-cycle"),
        Fixture("alternating-cycle-10", alternating_cycle(10), "alternating 10-cycle"),
        Fixture(
            "gapped-cycle-5",
            Interconnection(5, ((2, 3), (4, 5), (1, 5)), ((1, 2), (3, 4))),
            "5-cycle with a spring-free vertex",
        ),
        Fixture(
            "spider-one-spring-leaf",
            Interconnection(5, ((2, 3), (2, 4), (4, 5)), ((1, 2),)),
            "tree whose springs touch a single leaf",
        ),
        Fixture(
            "star-two-spring-leaves",
            Interconnection(4, ((2, 4),), ((1, 2), (2, 3))),
            "star whose springs touch two leaves",
        ),
        Fixture(
            "damper-chain",
            Interconnection(3, ((1, 2), (2, 3)), ()),
            "all-damper chain",
        ),
        Fixture(
            "spring-chain",
            Interconnection(3, (), ((1, 2), (2, 3))),
            "all-spring chain (no dissipation)",
        ),
        Fixture(
            "split-pair",
            Interconnection(4, ((1, 2),), ((3, 4),)),
            "two disconnected couples",
        ),
        Fixture(
            "overlap-pair",
            Interconnection(3, ((1, 2), (2, 3)), ((1, 2),)),
            "damper chain with one doubled edge",
        ),
        Fixture("two-node", Interconnection(2, ((1, 2),), ()), "single damper couple"),
    )


def by_name(name: str) -> Fixture:
    for fixture in gallery():
        if fixture.name == name:
            return fixture
    raise KeyError(f"no fixture named {name!r}")
