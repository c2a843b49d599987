"""Exact geometric image moments from discrete Radon projections."""

__version__ = "0.1.0"

from .bench import bench  # noqa: E402
from .bench import count_ops  # noqa: E402
from .bench import emit_csv  # noqa: E402
from .bench import synthetic_image  # noqa: E402
from .errors import EmptyImageError  # noqa: E402
from .errors import InternalInconsistencyError  # noqa: E402
from .errors import InvalidArgumentError  # noqa: E402
from .errors import InvalidPlanError  # noqa: E402
from .errors import MomentError  # noqa: E402
from .errors import PgmParseError  # noqa: E402
from .instrumented import OpCounts  # noqa: E402
from .model import Image  # noqa: E402
from .model import Moment1D  # noqa: E402
from .model import MomentSet  # noqa: E402
from .model import Projection  # noqa: E402
from .model import SlopeRatio  # noqa: E402
from .model import image_from_pixels  # noqa: E402
from .oracle import oracle_moments  # noqa: E402
from .pgm import read_pgm  # noqa: E402
from .pgm import write_pgm  # noqa: E402
from .pipeline import Method  # noqa: E402
from .pipeline import compute_moments  # noqa: E402
from .projections import moment_1d  # noqa: E402
from .projections import moments_1d_batch  # noqa: E402
from .projections import project  # noqa: E402
from .projections import project_all_order4  # noqa: E402
from .reconstruction import central_moments  # noqa: E402
from .reconstruction import reconstruct_order3  # noqa: E402
from .reconstruction import reconstruct_order4  # noqa: E402
from .solver import build_system  # noqa: E402
from .solver import default_slope_plan  # noqa: E402
from .solver import moments_general  # noqa: E402
from .solver import solve_exact  # noqa: E402
from .status import ExitCode  # noqa: E402

__all__ = [
    "__version__",
    "Image",
    "SlopeRatio",
    "Projection",
    "MomentSet",
    "Moment1D",
    "OpCounts",
    "Method",
    "ExitCode",
    "MomentError",
    "InvalidArgumentError",
    "InternalInconsistencyError",
    "EmptyImageError",
    "InvalidPlanError",
    "PgmParseError",
    "image_from_pixels",
    "project",
    "project_all_order4",
    "moment_1d",
    "moments_1d_batch",
    "reconstruct_order3",
    "reconstruct_order4",
    "central_moments",
    "default_slope_plan",
    "build_system",
    "solve_exact",
    "moments_general",
    "oracle_moments",
    "compute_moments",
    "count_ops",
    "bench",
    "emit_csv",
    "synthetic_image",
    "read_pgm",
    "write_pgm",
]
