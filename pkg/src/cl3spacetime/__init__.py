"""Spacetime physics in the real Clifford algebra Cl(3,0).

Events, momenta, fields and waves are multivectors whose bivector part
carries a vector-valued time.  Lorentz transformations act by two-sided
multiplication with exponentials of vectors and bivectors.
"""

from .algebra import (
    BASIS,
    BASIS_NAMES,
    E1,
    E2,
    E3,
    E12,
    E23,
    E31,
    E123,
    I,
    ONE,
    Multivector,
    dot,
    geometric_product,
    grade,
    reverse,
    star,
    vector,
    vector_inverse,
    wedge,
)
from .errors import (
    AccuracyError,
    ArgumentError,
    CliffordError,
    ConvergenceError,
    DegenerateGeometryError,
    InvariantError,
    NonFiniteError,
    SuperluminalError,
    UnitError,
    VectorDivisionError,
)
from .exponential import Rapidity, exp_bivector, exp_general, exp_vector, rapidity_from_speed
from .interactions import (
    InteractionLedger,
    compton_solve_multivector,
    compton_wavelength_shift,
    conservation_residual,
)
from .lorentz import (
    FieldMultivector,
    LorentzOperator,
    aligned_event,
    boost_event,
    boost_event_components,
    boost_field,
    make_operator,
    reflect,
    rotate,
    thomas_operator,
)
from .schrodinger import (
    ComplexLike,
    QuadratureSpec,
    WavePacketParams,
    closed_form,
    fit_spread,
    phase_rotation_rate,
    propagate_quadrature,
    spread,
)
from .spacetime import (
    Event,
    MomentumMultivector,
    default_time_direction,
    event_from_proper_time,
    gamma,
    interval_squared,
    momentum,
    photon_momentum,
    proper_velocity,
)
from .waves import (
    Current,
    GridSpec,
    WaveMultivector,
    current,
    dirac_equation_residual,
    dirac_factorization_residual,
    dispersion_residual,
    kg_residual,
    phase,
    wave_from_momentum,
)

__version__ = "0.1.0"
