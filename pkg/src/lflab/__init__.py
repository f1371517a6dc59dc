"""Light-field compression lab: N-D JPEG codec, shift-sum refocusing, RD harness."""

from .errors import (
    BitstreamError,
    FormatError,
    LFError,
    LoadError,
    NumericError,
    ParameterError,
    ShapeError,
)
from .lightfield import (
    LightField,
    Manifest,
    PlanarField,
    View,
    from_planar,
    load_light_field,
    read_ppm,
    save_light_field,
    to_planar,
    write_ppm,
)
from .metrics import RDPoint, direct_psnr, mean_focal_psnr, psnr
from .refocus import (
    FocalStack,
    RefocusParams,
    RenderedView,
    make_alpha_sweep,
    render_focal_stack,
    render_refocused,
)

__version__ = "0.1.0"
