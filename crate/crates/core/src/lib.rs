pub mod cli;
pub mod exactmath;
pub mod homology;
pub mod nakayama;
pub mod quivalg;
pub mod rigidity;
