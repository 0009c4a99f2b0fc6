"""Time-frequency analysis of quasi-periodic signals on the flat cylinder.

Modules
-------
special_fn   Hermite functions, Laguerre polynomials, theta-type series.
qp_signal    Quasi-periodic signals, windows and the periodization operator.
stft         STFT on the cylinder, Moyal identity, Gabor-space kernels.
fock         Bargmann-type transforms, Fock-space kernels, complex periodization.
frames       Frame bounds, Walnut/Janssen forms, Wexler-Raz residuals, dual windows.
sampling     Node sets, Beurling densities, sampling and interpolation formulas.
superframes  Vector-valued signals and Hermite superframes.
checks       Verification suites used by ``cylgabor verify``.
"""

from .errors import (ConstructionError, ConvergenceError, CylGaborError, DensityPreconditionError,
                     DomainError, InvalidTranslationError, NotAFrameError, RequiresDecayError,
                     UndefinedSeparationError, UnsupportedOrderError)
from .special_fn import TPFactorization, TruncationPolicy
from .qp_signal import (QPSignal, Window, basis_signal, gaussian_window, hermite_window, inner_product,
                        load_signal, make_signal, save_signal, tp_window)
from .stft import GridSpec, moyal_inner, stft_eval, stft_grid
from .fock import HoloFn, bargmann_eval, fock_kernel_analytic, true_bargmann_eval
from .frames import FrameSpec, dual_window, frame_bounds, wexler_raz_residual
from .sampling import PointSet, beurling_density, interpolate_true, sample_reconstruct
from .superframes import VectorSignal, VectorWindow, super_frame_bounds

__version__ = "0.1.0"
