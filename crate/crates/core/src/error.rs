use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("unknown preset group `{0}`")]
    UnknownPreset(String),
    #[error("cannot read group file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("group file line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("table entry out of range at ({0}, {1})")]
    OutOfRange(usize, usize),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("character table has {got} rows/columns, expected {expected}")]
    TableShape { got: usize, expected: usize },
    #[error("character rows {0} and {1} fail orthonormality")]
    Orthogonality(usize, usize),
    #[error("column relation fails for classes {0} and {1}")]
    ColumnRelation(usize, usize),
    #[error("row 0 is not the trivial character")]
    NotTrivialFirst,
    #[error("character {0} has a degree that is not a positive integer dividing the group order")]
    BadDegree(usize),
    #[error("character table required")]
    CharacterTableRequired,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: i64 },
    #[error("enumeration of {size} elements exceeds the cap {cap} (set CLASSALG_ENUM_CAP to raise it)")]
    ResourceLimit { size: u128, cap: u128 },
    #[error("element is not central")]
    NotCentral,
    #[error("cycle is not a cycle of the permutation")]
    NotACycle,
    #[error("character table required")]
    CharacterTableRequired,
    #[error("series division is not exact: {0}")]
    Divisibility(String),
    #[error("series order exhausted")]
    OrderExhausted,
    #[error("partial permutation acts outside its support")]
    OutsideSupport,
    #[error("operators have different shifts ({0} vs {1})")]
    ShiftMismatch(i64, i64),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
