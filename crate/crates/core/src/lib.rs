//! Lines of E³ and conoidal lines of E⁴, their projective models, the cubic
//! surface spanned by two skew lines, and rational ruled surfaces built with a
//! projective De Casteljau algorithm.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod bezier;
pub mod error;
pub mod fit;
pub mod gamma;
pub mod lines3;
pub mod lines4;

pub use algebra::{proj_equal, DualNumber, DualVector3, HomPoint, Quaternion, Vec3, Vec4, DEFAULT_TOL};
pub use bezier::{eval, eval_patch, eval_ruled, eval_strip, sample_mesh, ControlNet, Marks, Mesh, RuledSample, Space};
pub use error::{Error, Result};
pub use gamma::{
    canonicalize_skew_pair, classify_element_segment, classify_segment, Chirality, Frame4, GammaSurface, SegmentClass,
};
pub use lines3::{LineElement3, LinearComplex, PluckerLine};
pub use lines4::{fiber, mu, mu_flagged, nu, theta_back_projection, E4Line, E4LineElement, HeightLabeled, Spear};
