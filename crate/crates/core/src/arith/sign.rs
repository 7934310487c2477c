use serde::{Deserialize, Serialize};

/// A strict sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Positive => Sign::Negative,
        }
    }

    /// `Some` for non-zero integers.
    pub fn of_i8(s: i8) -> Option<Sign> {
        match s {
            1.. => Some(Sign::Positive),
            ..=-1 => Some(Sign::Negative),
            0 => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Positive => 1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Positive => "positive",
        })
    }
}
