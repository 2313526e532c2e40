pub mod analysis;
pub mod corpus;
pub mod error;
pub mod keytheory;
pub mod padic;
pub mod poly;
pub mod rational;
pub mod valuation;
pub mod value;

pub use error::{Error, Result};
pub use padic::{BaseValuation, Prime};
pub use poly::Poly;
pub use valuation::{
    AnyValuation, AugmentedChain, ChainStep, MonomialValuation, PcsPrefix, Valuation,
};
pub use value::Value;
