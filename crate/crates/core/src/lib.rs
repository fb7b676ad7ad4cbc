//! MaxCut heuristics built on projected gradient ascent over
//! box-constrained quadratic relaxations of the cut.
//!
//! * [`graph`]: CSR graphs, matrix-free Laplacian, parsing and generation.
//! * [`objectives`]: relaxed and lifted objectives, rounding, fixed points.
//! * [`init`]: degree-based initial points and Gaussian batches.
//! * [`pga`]: the batched momentum ascent engine.
//! * [`solvers`]: unlifted, lifted, and alternating batch solvers.
//! * [`evo`]: evolutionary search over step size and iteration count.
//! * [`oracle`]: exhaustive solvers for verification.
//! * [`record`] and [`presets`]: benchmark records and tuned parameters.
//!
//! Data-parallel loops use rayon when the `parallel` feature is enabled
//! (the default) and fall back to sequential iteration otherwise. Results are
//! identical either way.

pub mod error;
pub mod evo;
pub mod graph;
pub mod init;
pub mod objectives;
pub mod oracle;
mod par;
pub mod pga;
pub mod presets;
pub mod record;
pub mod rng;
pub mod solvers;
pub mod state;

pub use error::{Error, Result};
pub use graph::{generate_er, parse_edge_list, DegreeStats, Graph};
pub use objectives::{cut_value, CutSolution};
pub use par::{current_workers, with_workers};
pub use pga::AscentParams;
pub use solvers::{Algorithm, SolveReport, SolverConfig};
pub use state::DenseState;
