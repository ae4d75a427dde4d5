//! Exact kernels and spectral quantities for an infinite star quantum graph
//! with a delta (Exner-Seba) vertex.
//!
//! A star graph has one vertex and `N` semi-infinite edges. On each edge the
//! operator is `H = -d^2/dx^2`; at the vertex the edge values agree and the
//! outgoing derivatives satisfy `sum_j u_j'(0) = alpha u(0)` (`alpha = 0` is
//! Kirchhoff, `alpha -> infinity` is Dirichlet).
//!
//! Modules:
//! * [`domain`] - graph configuration, edge points, grids, tables.
//! * [`specialfn`] - `Ei`, `erfc`, adaptive quadrature, Richardson extrapolation.
//! * [`bondurant`] - the first-order map from Dirichlet to delta-vertex solutions and its inverse.
//! * [`kernels`] - free and star-graph Green functions (wave, heat, quantum, cylinder).
//! * [`spectral`] - spectral projection kernel, local and global densities, scattering basis.
//! * [`vacuum`] - vacuum energy density: closed form, asymptotics, two numerical routes.
//! * [`wavesolve`] - exact wave evolution, the energy functionals and a finite-difference oracle.
//! * [`verify`] - the cross-check suite behind `vertexkernels verify`.
//! * [`cli`] - sweeps and CSV/JSON output for the command-line tool.

pub mod bondurant;
pub mod cli;
pub mod domain;
pub mod error;
pub mod kernels;
pub mod specialfn;
pub mod spectral;
pub mod vacuum;
pub mod verify;
pub mod wavesolve;

pub use bondurant::EdgeVectorFunction;
pub use domain::{EdgePoint, Grid, StarGraphConfig, TabulatedSweep, VertexCondition};
pub use error::{Error, Result};
pub use num_complex::Complex64;
