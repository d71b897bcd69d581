use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rewrite budget of {budget} rule applications exceeded in algebra `{algebra}`")]
    StepBudget { algebra: String, budget: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{generator}` has exponent {exponent} outside its lattice (1/{radical_order})Z")]
    Lattice {
        generator: String,
        exponent: String,
        radical_order: u32,
    },

    #[error("negative exponent on non-invertible generator `{0}`")]
    NotInvertible(String),

    #[error("cannot raise `{base}` to the power {exponent}: {reason}")]
    Power {
        base: String,
        exponent: String,
        reason: String,
    },

    #[error("order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("term budget exceeded: {terms} > {budget}")]
    TermBudget { terms: u128, budget: u128 },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
