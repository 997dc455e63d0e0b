use thiserror::Error;

/// Errors raised while loading, building or evaluating.
#[derive(Debug, Error)]
pub enum Error {
    /// The input does not match the expected JSON schema. `pointer` is a JSON pointer.
    #[error("schema violation at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },

    /// The input parsed but violates a structural invariant.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A required table entry is absent.
    #[error("missing table entry {table}({key})")]
    MissingEntry { table: &'static str, key: String },

    /// An index is outside the valid range.
    #[error("{what} index {index} out of range (size {size})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    /// A validation failed; `check` names the failing check.
    #[error("validation failed: {check}: {detail}")]
    Validation { check: String, detail: String },

    /// The tetrahedron coloring is not admissible.
    #[error("inadmissible tetrahedron coloring {0}")]
    Inadmissible(String),

    /// A Pachner move does not apply at the requested target.
    #[error("move {kind} not applicable: {reason}")]
    MoveNotApplicable { kind: String, reason: String },

    /// The state-sum category is not special.
    #[error("category is not special: row dimensions {0:?}")]
    NotSpecial(Vec<f64>),

    /// An enumeration exceeded its configured size guard.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Whether this error stems from malformed input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema { .. } | Error::Invalid(_) | Error::MissingEntry { .. } | Error::OutOfRange { .. } | Error::Io(_)
        )
    }
}

/// Parse JSON into `T`, reporting failures with a JSON pointer to the offending value.
pub(crate) fn from_json_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let pointer = json_pointer(err.path());
        Error::Schema {
            pointer,
            message: err.into_inner().to_string(),
        }
    })
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}
