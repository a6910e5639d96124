//! Exact rational linear algebra: the substrate of the eigenvalue pipeline
//! and the brute-force oracle of the test suites.

pub mod hull;
pub mod matrix;
pub mod poly;
pub mod roots;

pub use hull::{hull2d_cycle, hull2d_exact, Point2};
pub use matrix::{
    collinear, dot, independent_subset, intersect_spans, orthogonalize, primitive, span_rank, RankCertificate, RatMatrix,
    RatVector,
};
pub use poly::RatPolynomial;
pub use roots::{rational_roots, real_root_isolation, IsolatedRoot, RootIsolation};
