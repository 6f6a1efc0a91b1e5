"""Compositional RK4 discretization of wired continuous systems."""

from ._core import (
    BlowUpError,
    ContinuousSystem,
    DiscreteSystem,
    Error,
    FourStepSystem,
    Interface,
    ParseError,
    SpecError,
    WiringDiagram,
    apply_wiring,
    catalog,
    check_compositionality,
    check_laws,
    convergence,
    cs_tensor,
    euler_discretize,
    eval_expression,
    parse_expression,
    rk4_discretize,
    simulate_csv,
    wiring_compose,
    wiring_identity,
    wiring_tensor,
)

__all__ = [
    "BlowUpError",
    "ContinuousSystem",
    "DiscreteSystem",
    "Error",
    "FourStepSystem",
    "Interface",
    "ParseError",
    "SpecError",
    "WiringDiagram",
    "apply_wiring",
    "catalog",
    "check_compositionality",
    "check_laws",
    "convergence",
    "cs_tensor",
    "euler_discretize",
    "eval_expression",
    "parse_expression",
    "rk4_discretize",
    "simulate_csv",
    "wiring_compose",
    "wiring_identity",
    "wiring_tensor",
]
