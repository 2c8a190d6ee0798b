"""Quadratic-phase Fourier-type transforms on uniform grids, their L_p bound
constants, and a numerical harness that checks the corresponding
Hausdorff-Young type inequalities and oscillatory decay rates."""

__version__ = "0.1.0"

from .phases import HomogeneousPhase, QuadraticPhase, parse_coefficients  # noqa: E402
from .sampling import (  # noqa: E402
    DEFAULT_GRID,
    CorpusEntry,
    GridSpec,
    SampledFunction1D,
    Window,
    default_corpus,
    load_corpus,
    make_corpus,
)
from .transforms import (  # noqa: E402
    KernelMatrix,
    TransformResult,
    TransformSpec,
    apply,
    build_kernel_matrix,
)
from .norms import (  # noqa: E402
    beckner_constant,
    conjugate_exponent,
    lp_norm,
    operator_norm_2,
)

__all__ = [
    "__version__",
    "QuadraticPhase",
    "HomogeneousPhase",
    "parse_coefficients",
    "GridSpec",
    "DEFAULT_GRID",
    "SampledFunction1D",
    "Window",
    "CorpusEntry",
    "default_corpus",
    "make_corpus",
    "load_corpus",
    "TransformSpec",
    "TransformResult",
    "KernelMatrix",
    "apply",
    "build_kernel_matrix",
    "lp_norm",
    "conjugate_exponent",
    "beckner_constant",
    "operator_norm_2",
]
