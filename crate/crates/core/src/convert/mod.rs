//! Representation equivalences, decompositions and the dyadic machinery for
//! higher Ferrers dimension.

pub mod chain3;
pub mod conv2;
pub mod dyadic;

pub use chain3::{assemble_chain3, chain3_projections, flip_chain_rep};
pub use conv2::{conv2_decompose, gig_to_conv2, labeled_edges, prig_to_conv2, LabeledRep};
pub use dyadic::{chaind_bound, dyadic_cover, dyadic_decompose, DyadicPiece, DyadicRange};
