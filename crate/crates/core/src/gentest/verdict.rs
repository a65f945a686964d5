use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Generates,
    Proper,
    Inconclusive,
}

/// Why a tuple generates a proper subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Not irreducible over the algebraic closure.
    Reducible,
    /// Word traces lie in the subfield of this degree.
    SubfieldDegree(u32),
    Dihedral,
    ExceptionalA4S4A5,
    /// A common eigenvector over the field of definition.
    Borel,
    ClosureSize(u128),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Dickson,
    Closure,
    AlgebraSpan,
    TraceField,
    AdjointTraceField,
    ExteriorSquare,
    Certificates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenVerdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl GenVerdict {
    pub fn generates(method: Method) -> Self {
        GenVerdict {
            outcome: Outcome::Generates,
            witness: None,
            method,
        }
    }

    pub fn proper(witness: Witness, method: Method) -> Self {
        GenVerdict {
            outcome: Outcome::Proper,
            witness: Some(witness),
            method,
        }
    }

    pub fn inconclusive() -> Self {
        GenVerdict {
            outcome: Outcome::Inconclusive,
            witness: None,
            method: Method::Certificates,
        }
    }

    pub fn is_generating(&self) -> bool {
        self.outcome == Outcome::Generates
    }

    /// The one-line `outcome;witness;method` record.
    pub fn to_record(&self) -> String {
        let w = self.witness.map(|w| w.to_string()).unwrap_or_default();
        format!("{};{};{}", self.outcome, w, self.method)
    }

    pub fn parse_record(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(';').collect();
        let [o, w, m] = parts.as_slice() else {
            return Err(Error::parse(format!(
                "verdict record {s:?} needs three fields"
            )));
        };
        let outcome = o.parse()?;
        let witness = if w.is_empty() { None } else { Some(w.parse()?) };
        let method = m.parse()?;
        if (outcome == Outcome::Proper) != witness.is_some() {
            return Err(Error::parse(format!(
                "verdict record {s:?}: a witness goes with Proper only"
            )));
        }
        Ok(GenVerdict {
            outcome,
            witness,
            method,
        })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Generates => "Generates",
            Outcome::Proper => "Proper",
            Outcome::Inconclusive => "Inconclusive",
        })
    }
}

impl FromStr for Outcome {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Generates" => Ok(Outcome::Generates),
            "Proper" => Ok(Outcome::Proper),
            "Inconclusive" => Ok(Outcome::Inconclusive),
            _ => Err(Error::parse(format!("unknown outcome {s:?}"))),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Reducible => f.write_str("Reducible"),
            Witness::SubfieldDegree(b) => write!(f, "SubfieldDegree({b})"),
            Witness::Dihedral => f.write_str("Dihedral"),
            Witness::ExceptionalA4S4A5 => f.write_str("ExceptionalA4S4A5"),
            Witness::Borel => f.write_str("Borel"),
            Witness::ClosureSize(n) => write!(f, "ClosureSize({n})"),
        }
    }
}

impl FromStr for Witness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let arg = |prefix: &str| -> Option<&str> { s.strip_prefix(prefix)?.strip_suffix(')') };
        let bad = || Error::parse(format!("unknown witness {s:?}"));
        match s {
            "Reducible" => return Ok(Witness::Reducible),
            "Dihedral" => return Ok(Witness::Dihedral),
            "ExceptionalA4S4A5" => return Ok(Witness::ExceptionalA4S4A5),
            "Borel" => return Ok(Witness::Borel),
            _ => {}
        }
        if let Some(b) = arg("SubfieldDegree(") {
            return Ok(Witness::SubfieldDegree(b.parse().map_err(|_| bad())?));
        }
        if let Some(n) = arg("ClosureSize(") {
            return Ok(Witness::ClosureSize(n.parse().map_err(|_| bad())?));
        }
        Err(bad())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dickson => "dickson",
            Method::Closure => "closure",
            Method::AlgebraSpan => "algebra_span",
            Method::TraceField => "trace_field",
            Method::AdjointTraceField => "adjoint_trace_field",
            Method::ExteriorSquare => "exterior_square",
            Method::Certificates => "certificates",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dickson" => Method::Dickson,
            "closure" => Method::Closure,
            "algebra_span" => Method::AlgebraSpan,
            "trace_field" => Method::TraceField,
            "adjoint_trace_field" => Method::AdjointTraceField,
            "exterior_square" => Method::ExteriorSquare,
            "certificates" => Method::Certificates,
            _ => return Err(Error::parse(format!("unknown method {s:?}"))),
        })
    }
}
