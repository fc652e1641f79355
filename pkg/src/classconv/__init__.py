"""Densities, samplers and experiments for products of random 2x2 matrices
drawn from conjugacy classes of SU(2) and spherical classes of SU(2),
SL(2,R) and SL(2,C)."""

__version__ = "0.1.0"

from .classes import (
    ClassMass,
    ConjugacyClass,
    MassConvention,
    SphericalClassCompact,
    SphericalClassNC,
    class_mass,
    descriptor_from_json,
    descriptor_to_json,
    sample_conjugacy,
    sample_spherical_compact,
    sample_spherical_nc,
)
from .densities import (
    DensityKind,
    ProductDensity,
    SupportInterval,
    conj_density_raw,
    conj_exact_sampler,
    conj_pdf,
    conj_product_density,
    conj_support,
    constants_report,
    density_curve,
    integrate_pdf,
    noncompact_product_density,
    product_density_for,
    spherical_coeffs_A,
    spherical_pdf_A,
    spherical_pdf_B,
    spherical_pdf_C,
    spherical_product_density,
    unnormalized_product_value,
)
from .errors import (
    ClassconvError,
    CoincidentPoints,
    DegenerateClass,
    DegenerateInput,
    FoldedRegime,
    InvalidParams,
    NumericalError,
    TraceBelowTwo,
    UnsortedInput,
)
from .experiments import (
    ComparisonReport,
    Histogram,
    compare_experiment,
    convergence_study,
    iterate_conj_support,
    iterated_convolution,
    ks_distance,
    ks_two_sample,
    product_experiment,
    stream_rng,
)
from .groups import (
    ChartPoint,
    Flavor,
    KakFactors,
    Sl2Element,
    Su2Element,
    cartan_element,
    cartan_parameter,
    chart_from_su2,
    class_angle,
    haar_sample_su2,
    kak_decompose,
    spherical_radius,
    su2_from_chart,
    su2_multiply,
)
from .harmonic import (
    CharacterTable,
    SeriesResult,
    Summation,
    character,
    fourier_coefficient,
    fourier_synthesis,
    nu_series,
    plancherel_norm_sq,
    series_diagnostics,
)
from .pointsets import (
    EnergyReport,
    Method,
    SpherePointSet,
    deterministic_product_measure,
    icosahedral_lattice,
    icosahedron_vertices,
    minimize_energy,
    pointset_product_angles,
    pointset_to_class,
    polar_points,
    random_points,
    random_rotation,
    riesz_energy,
    rotate_pointset,
)
from .quantize import (
    QuantizationReport,
    RepLabel,
    clebsch_gordan_range,
    label_angle,
    minkowski_support,
    quantization_consistency,
)
