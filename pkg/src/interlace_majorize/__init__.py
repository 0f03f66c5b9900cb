"""Majorization and strong majorization of real-rooted polynomials with a common interlacer.

Exact certificates come from partial fraction residues; numerical evidence
comes from tracking the roots of t*p + (1-t)*q.
"""
from .errors import *  # noqa: F401,F403
from .harness import (
    CampaignReport,
    GenSpec,
    campaign_ncm,
    campaign_nscm,
    generate_diffmaj_pair,
    generate_pair,
    search_diffmaj,
)
from .homotopy import (
    ConvexPath,
    Monotone,
    TrajectoryBundle,
    root_velocity,
    strong_majorization_empirical,
    track,
)
from .interlace import (
    InterlaceVerdict,
    PolyPair,
    common_interlacer_check,
    proper_interlacing_check,
    reduce_shared_roots,
    strictly_alternate,
)
from .majorize import MajorizationVerdict, dalton_path, majorizes, robin_hood
from .poly import (
    DEFAULT_TOL,
    Interval,
    Poly,
    RootList,
    derivative,
    evaluate,
    isolate_root_in_interval,
    poly_from_roots,
)
from .residue import (
    Certificate,
    CertificateKind,
    Direction,
    ResidueReport,
    decompose,
    necessary_condition,
    strong_majorization_certificate,
)

__version__ = "0.1.0"
