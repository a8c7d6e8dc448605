pub mod algebra;
pub mod format;
pub mod homological;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod tilde;
