//! Graded modules over quotients of polynomial rings over prime fields, with
//! homological algebra, linkage of modules and local cohomology.

pub mod cohomology;
pub mod colinkage;
pub mod error;
pub mod groebner;
pub mod homalg;
pub mod linkage;
pub mod modules;
pub mod par;
pub mod ring;
pub mod verdict;

pub use error::{Error, Result};
pub use modules::{GradedModule, ModuleMap};
pub use ring::{make_ring, polynomial_ring, Ring};
pub use verdict::Verdict;
