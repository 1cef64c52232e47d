//! Computing with finite strict 3-categories.
//!
//! The building blocks are Steiner's augmented directed complexes (`adc`),
//! the cells of the associated ω-categories as two-row matrices (`nu`), and
//! the orientals they generate (`orientals`). On top of those live explicit
//! finite 3-categories given by cell tables (`cat3`), their Street nerves up
//! to dimension 4 (`nerve`), normalised oplax 3-functors with their full
//! normalisation/coherence validator (`oplax`), the simplicial counterpart
//! with constraint-cell extraction (`simplicial`), and the strictification of
//! split-free 1-categories (`strictify`).

pub mod adc;
pub mod cat3;
pub mod chains;
pub mod cli;
pub mod nerve;
pub mod nu;
pub mod oplax;
pub mod orientals;
pub mod simplicial;
pub mod strictify;
pub mod trees;

pub use crate::chains::Chain;
