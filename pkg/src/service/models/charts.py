"""Charts and parameters shared by the catalogue."""

from typing import Optional

from src.service.algebra import Scalar, exp, parameter, registry, substitute
from src.service.algebra.scalar import ScalarLike
from src.service.forms import Chart, Form, Guard

ALPHA = Scalar.of(parameter("alpha"))
BETA = Scalar.of(parameter("beta"))
GAMMA = Scalar.of(parameter("gamma"))
C = Scalar.of(parameter("c"))

PARAMETERS = {"alpha": ALPHA, "beta": BETA, "gamma": GAMMA, "c": C}

COORDINATES = ("x", "y", "z", "p", "q")
HAT_COORDINATES = ("xh", "yh", "zh", "ph", "qh")


def alpha_guards(alpha: Scalar = ALPHA) -> tuple[Guard, ...]:
    return (Guard.nonzero(alpha), Guard.nonzero(alpha**2 - 1))


def beta_gamma_guards(beta: Scalar = BETA, gamma: Scalar = GAMMA) -> tuple[Guard, ...]:
    return (Guard.nonzero(beta), Guard.nonzero(gamma), Guard.nonzero(beta * gamma - 1))


# Mixed jet space carrying the Monge forms; √q needs q > 0.
JET = Chart.create("jet", COORDINATES)
JET = JET.with_guards(Guard.nonzero(JET.scalar("x")), Guard.positive(JET.scalar("q")))
JET_ALPHA = JET.with_guards(Guard.nonzero(ALPHA**2 - 1))
JET_BETA_GAMMA = JET.with_guards(Guard.nonzero(BETA * GAMMA - 1))
# The inverse of the second map needs 1 − 2zqx ≠ 0.
JET_INVERTIBLE = JET_ALPHA.with_guards(
    Guard.nonzero(1 - 2 * JET.scalar("z") * JET.scalar("q") * JET.scalar("x")),
)

# SL(2) x R^2 with the left-invariant sigma coframe.
ROLLING = Chart.create("rolling", COORDINATES)
ROLLING = ROLLING.with_guards(Guard.nonzero(ROLLING.scalar("y")))
ROLLING_ADAPTED = ROLLING.with_guards(Guard.nonzero(ALPHA**2 - 1))

# Same manifold with sl2 realized by the prolonged fractional linear action.
PROLONGED = Chart.create("prolonged", COORDINATES)
PROLONGED = PROLONGED.with_guards(
    *alpha_guards(),
    Guard.nonzero(PROLONGED.scalar("y") + ALPHA),
)

HAT3 = Chart.create("hat3", HAT_COORDINATES)
HAT3 = HAT3.with_guards(
    *alpha_guards(),
    Guard.nonzero(HAT3.scalar("zh")),
    Guard.nonzero(HAT3.scalar("qh")),
    Guard.nonzero(HAT3.scalar("yh") + (1 - 1 / ALPHA**2) * HAT3.scalar("zh") / HAT3.scalar("qh")),
)

# Two copies of sl2 on M^5.
SL2_PAIR = Chart.create("sl2pair", COORDINATES)
SL2_PAIR = SL2_PAIR.with_guards(Guard.nonzero(SL2_PAIR.scalar("q")))
# Domain of the map to the hat4 chart; the last guard keeps the jet q finite.
SL2_PAIR_HAT = SL2_PAIR.with_guards(
    Guard.nonzero(C),
    *beta_gamma_guards(),
    Guard.nonzero(GAMMA * SL2_PAIR.scalar("y") - 1),
)

HAT4 = Chart.create("hat4", HAT_COORDINATES)
HAT4 = HAT4.with_guards(
    *beta_gamma_guards(),
    Guard.nonzero(HAT4.scalar("qh")),
    Guard.nonzero(HAT4.scalar("yh") + HAT4.scalar("zh")),
)

# Surfaces carrying the two Lorentzian surface elements.
SURFACE = Chart.create("surface", ("x", "q"))
SURFACE_PRIME = Chart.create("surface_prime", ("y", "p"))
SURFACE_PRIME = SURFACE_PRIME.with_guards(Guard.nonzero(SURFACE_PRIME.scalar("y")))


def coordinate_forms(chart: Chart) -> dict[str, Form]:
    """d(c) for every coordinate, keyed by name."""
    return {c.name: Form.differential(chart, c) for c in chart.coordinates}


def scalars(chart: Chart) -> dict[str, Scalar]:
    return {c.name: Scalar.of(c) for c in chart.coordinates}


def exp_alpha_x(chart: Chart, alpha: Scalar = ALPHA) -> Scalar:
    return exp(alpha * chart.scalar("x"))


def bind(chart: Chart, **values: Optional[ScalarLike]) -> Chart:
    """Chart with parameter values substituted into its guards.

    Raises GuardViolation when a bound guard is a constant off the locus;
    guards that become admissible constants are dropped.
    """
    bindings = {registry.lookup(name): Scalar.of(v) for name, v in values.items() if v is not None}
    if not bindings:
        return chart
    chart.check_parameters(bindings)
    guards = []
    for guard in chart.guards:
        expr = substitute(guard.expr, bindings)
        if not expr.is_constant:
            guards.append(Guard(expr, guard.kind))
    return Chart(chart.name, chart.coordinates, tuple(guards))
