pub mod bstorsion;
pub mod cli;
pub mod cup;
pub mod error;
pub mod fox;
pub mod gamma;
pub mod groupring;
pub mod hermitian;
pub mod words;

pub use error::{Error, Result};
pub use groupring::{OrientationCharacter, RingElement, RingMatrix};
pub use words::{FreeWord, Group, GroupClass, GroupElement, Letter, Norm};
