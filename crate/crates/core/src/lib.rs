//! Persistence landscapes of affine iterated function systems.
//!
//! This crate computes the degree-0 persistence landscape of a self-similar
//! fractal two independent ways and cross-checks them:
//!
//! * **Empirically** — iterate the system from its extreme fixed points
//!   ([`ifs`]), read merge heights off the minimum spanning tree
//!   ([`persistence`]), and stack the resulting hats into a landscape
//!   ([`landscape`]).
//! * **Analytically** — build the system's landscape operator, an affine
//!   contraction on landscape space whose unique fixed point is the
//!   attractor's landscape, and evaluate that fixed point exactly
//!   ([`operator`]).
//!
//! The [`verify`] module turns the agreement between the two routes into
//! executable reports, and [`preset`] bundles seven worked systems. All
//! algorithms are generic over the scalar type through [`Real`]; the crate
//! root exports `*64`/`*32` aliases for the two standard widths.
//!
//! ```
//! use fractalscape::{sup_distance, Landscape, Preset};
//! use fractalscape::{h0_diagram, DEFAULT_POINT_CAP};
//!
//! let preset = Preset::Cantor3;
//! let ifs = preset.ifs::<f64>();
//! let cloud = ifs.iterate(&ifs.seed_points(), 6, DEFAULT_POINT_CAP)?;
//! let empirical = Landscape::from_diagram(&h0_diagram(&cloud)?);
//! let analytic = preset.operator::<f64>().fixed_point(cloud.len())?;
//! // Iterates converge geometrically: at n = 6 the two landscapes agree
//! // to half of (1/3)^6, up to float noise in the measured merge scales.
//! assert!(sup_distance(&empirical, &analytic) <= 0.5 / 3.0_f64.powi(6) + 1e-12);
//! # Ok::<(), fractalscape::Error>(())
//! ```

pub mod config;
pub mod error;
pub mod ifs;
pub mod landscape;
pub mod num;
pub mod operator;
pub mod persistence;
pub mod preset;
pub mod verify;

pub use config::IfsConfig;
pub use error::{Error, Result};
pub use ifs::{
    distance, hausdorff_distance, AffineIfs, PointCloud, SeparationCheck, DEFAULT_POINT_CAP,
};
pub use landscape::{sup_diff, sup_distance, Hat, Landscape, PiecewiseLinear};
pub use num::{round_sig12, Real};
pub use operator::{
    closed_form_wsi, DeltaProfile, DeltaSource, LandscapeOperator, LipschitzBound,
    OperatorIteration,
};
pub use persistence::{
    empirical_deltas, epsilon_components, h0_diagram, mst_profile, MstProfile, PersistenceDiagram,
    PersistencePair,
};
pub use preset::Preset;
pub use verify::{
    bound_slack, commutation_report, convergence_report, stability_fuzz, CheckRow,
    VerificationReport,
};

/// Double-precision aliases: the default width for the CLI and tests.
pub type PointCloud64 = PointCloud<f64>;
pub type AffineIfs64 = AffineIfs<f64>;
pub type PersistenceDiagram64 = PersistenceDiagram<f64>;
pub type Landscape64 = Landscape<f64>;
pub type PiecewiseLinear64 = PiecewiseLinear<f64>;
pub type LandscapeOperator64 = LandscapeOperator<f64>;
pub type DeltaProfile64 = DeltaProfile<f64>;
pub type VerificationReport64 = VerificationReport<f64>;

/// Single-precision aliases for memory-constrained embeddings.
pub type PointCloud32 = PointCloud<f32>;
pub type AffineIfs32 = AffineIfs<f32>;
pub type PersistenceDiagram32 = PersistenceDiagram<f32>;
pub type Landscape32 = Landscape<f32>;
pub type PiecewiseLinear32 = PiecewiseLinear<f32>;
pub type LandscapeOperator32 = LandscapeOperator<f32>;
pub type DeltaProfile32 = DeltaProfile<f32>;
pub type VerificationReport32 = VerificationReport<f32>;
