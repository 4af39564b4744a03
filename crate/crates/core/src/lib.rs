//! Contact graphs of totally and locally separable packings of congruent
//! balls: exact planar separability decisions with certificates,
//! contact-number bound evaluation, extremal constructions, exhaustive
//! lattice search, and the classification of planar maximizers.
//!
//! A packing is *totally separable* when every pair of balls can be split by
//! a hyperplane that misses every ball interior, and *locally separable*
//! when each ball together with its tangent neighbors forms a totally
//! separable packing. The planar decisions here are exact up to an explicit
//! tolerance policy; in higher dimensions the necessary conditions
//! (pairwise-obtuse tangency directions, vertex degree at most `2d`) are
//! tested instead.

pub mod bounds;
pub mod constructions;
pub mod enumeration;
pub mod geometry;
pub mod io;
pub mod separability;
pub mod special;
pub mod tolerance;

pub use bounds::{
    beszsz_ts_bound, boroczky_half_pi_density, bounds_3d, cap_surface_measure, lattice_bounds,
    main_ls_bound, planar_bounds, rogers_sigma, strengthening_check, unit_ball_volume,
    BoundFormula, BoundReport, Bounds3dKind, BoundsError, CapSpec, DensityEstimate, DensitySource,
    PlanarKind, SigmaEstimate,
};
pub use constructions::{
    basic_polyomino, basic_polyomino_edge_count, cross_polytope_star, decompose, exceptional_seven,
    grid_packing, hexagonal_flower, pendant_augmented, pentagon_augmented, pentagon_solution,
    ConstructionError, LatticeConfig, PentagonSolution, PolyominoSpec,
};
pub use enumeration::{
    classify, euler_face_check, faces, max_contact_lattice, pin_exceptional_seven, two_connected,
    CaseLabel, Classification, EmbeddedGraph, EnumerationError, Evidence, Face, FaceCensus,
    LatticeSearchResult, SearchBudget,
};
pub use geometry::{canonical_lattice_form, ContactGraph, ContactStar, GeometryError, Packing};
pub use io::{
    catalog_store, catalog_verify, read_packing, render_svg, write_packing, write_text,
    CatalogEntry, CatalogError, FormatError, Metadata, PackingFile, RenderOptions, VerifyReport,
};
pub use separability::{
    is_ls, is_ts, obtuse_star_check, separate_pair, Line2, LsMode, LsVerdict, LsWitness,
    SeparabilityError, SeparationCertificate, StarCheck, TsVerdict,
};
pub use special::planar_max_contacts;
pub use tolerance::Tolerance;
