use thiserror::Error;

use crate::syntax::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("ill-formed: {0}")]
    IllFormed(String),
    #[error("symbol outside the morphism's domain: {0}")]
    OutsideDomain(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("theory `{theory}` does not carry the `{flag}` flag")]
    MissingFlag { theory: String, flag: String },
    #[error("name clash: {0}")]
    NameClash(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map is not injective on sort `{0}`")]
    NotInjective(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("subset is not down-closed")]
    NotDownClosed,
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
