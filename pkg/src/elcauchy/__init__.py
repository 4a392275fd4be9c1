"""Elliptic complex numbers (i**2 = -beta*i - alpha) and numerical checks of
their Cauchy and Cauchy-Pompeiu integral formulas."""
from .algebra import (
    AlgebraParams,
    ElComplex,
    conj,
    equivalence_ratio_bounds,
    inner,
    inv,
    make_params,
    mul,
    norm,
    tilde,
)
from .calculus import (
    Constant,
    Jet,
    Kernel,
    Poly,
    Product,
    SmoothNonHolo,
    TestFunction,
    TildePower,
    cr_apply,
    cr_system_residual,
    eval_jet,
)
from .errors import (
    DivisionByZero,
    ElComplexError,
    EllipticityViolation,
    NotHolomorphic,
    NotStarShaped,
    PoleEvaluation,
    PoleOutsideDomain,
)
from .quadrature import (
    AlgEllipse,
    AlgEllipseDisk,
    Circle,
    Disk,
    QuadratureSpec,
    StarDomain,
    alg_ellipse_curve,
    area_integral,
    contour_integral,
    singular_area_integral,
)
from .verify import (
    VerificationReport,
    cauchy,
    cauchy_pompeiu,
    check_schmidt,
    check_vanishing_limit,
    check_winding,
    sweep,
)

__version__ = "0.1.0"
