use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error("sigma is not strictly increasing at n = {0}")]
    NotIncreasing(u64),
    #[error("sigma tail slope must be at least 1, got {0}")]
    FlatTail(u64),
    #[error("sigma tail is negative at n = {0}")]
    NegativeTail(u64),
    #[error("sigma is empty: give a table, a tail, or both")]
    Empty,
    #[error("unknown sigma {0:?} (expected \"identity\", \"square\" or a table)")]
    UnknownName(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Affine {
    pub c: u64,
    pub d: i64,
}

/// A strictly increasing map `N → N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sigma {
    Identity,
    Square,
    /// `table[n]` for `n < table.len()`, then `c·n + d` if a tail is given.
    Table { table: Vec<u64>, tail: Option<Affine> },
}

impl Sigma {
    pub fn table(table: Vec<u64>, tail: Option<Affine>) -> Result<Self, SigmaError> {
        if table.is_empty() && tail.is_none() {
            return Err(SigmaError::Empty);
        }
        if let Some(n) = table.windows(2).position(|w| w[0] >= w[1]) {
            return Err(SigmaError::NotIncreasing(n as u64 + 1));
        }
        if let Some(Affine { c, d }) = tail {
            if c == 0 {
                return Err(SigmaError::FlatTail(c));
            }
            let n = table.len() as i128;
            let first = c as i128 * n + d as i128;
            if first < 0 {
                return Err(SigmaError::NegativeTail(n as u64));
            }
            if table.last().is_some_and(|&last| first <= last as i128) {
                return Err(SigmaError::NotIncreasing(n as u64));
            }
        }
        Ok(Sigma::Table { table, tail })
    }

    /// `σ(n)`, or `None` past a finite table or on overflow.
    pub fn eval(&self, n: u64) -> Option<u64> {
        match self {
            Sigma::Identity => Some(n),
            Sigma::Square => n.checked_mul(n),
            Sigma::Table { table, tail } => match table.get(n as usize) {
                Some(&v) => Some(v),
                None => {
                    let Affine { c, d } = (*tail)?;
                    let v = (c as i128).checked_mul(n as i128)? + d as i128;
                    u64::try_from(v).ok()
                }
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SigmaRepr {
    Named(String),
    Table {
        #[serde(default)]
        table: Vec<u64>,
        #[serde(default)]
        tail: Option<Affine>,
    },
}

impl Serialize for Sigma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Sigma::Identity => SigmaRepr::Named("identity".into()),
            Sigma::Square => SigmaRepr::Named("square".into()),
            Sigma::Table { table, tail } => SigmaRepr::Table { table: table.clone(), tail: *tail },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sigma {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match SigmaRepr::deserialize(d)? {
            SigmaRepr::Named(n) => match n.as_str() {
                "identity" => Ok(Sigma::Identity),
                "square" => Ok(Sigma::Square),
                _ => Err(D::Error::custom(SigmaError::UnknownName(n))),
            },
            SigmaRepr::Table { table, tail } => Sigma::table(table, tail).map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        assert_eq!(Sigma::Identity.eval(7), Some(7));
        assert_eq!(Sigma::Square.eval(3), Some(9));
        let s = Sigma::table(vec![0, 2, 5], Some(Affine { c: 3, d: 0 })).unwrap();
        assert_eq!((0..5).map(|n| s.eval(n).unwrap()).collect::<Vec<_>>(), vec![0, 2, 5, 9, 12]);
        let finite = Sigma::table(vec![1, 4], None).unwrap();
        assert_eq!(finite.eval(2), None);
    }

    #[test]
    fn validation() {
        assert_eq!(Sigma::table(vec![0, 3, 3], None), Err(SigmaError::NotIncreasing(2)));
        assert_eq!(
            Sigma::table(vec![0, 10], Some(Affine { c: 2, d: 0 })),
            Err(SigmaError::NotIncreasing(2))
        );
        assert_eq!(Sigma::table(vec![], None), Err(SigmaError::Empty));
        assert!(Sigma::table(vec![], Some(Affine { c: 1, d: -1 })).is_err());
    }

    #[test]
    fn json_forms() {
        let s: Sigma = serde_json::from_str("\"square\"").unwrap();
        assert_eq!(s, Sigma::Square);
        let t: Sigma = serde_json::from_str(r#"{"table":[0,1],"tail":{"c":2,"d":-1}}"#).unwrap();
        assert_eq!(t.eval(3), Some(5));
        assert!(serde_json::from_str::<Sigma>("\"cube\"").is_err());
        assert!(serde_json::from_str::<Sigma>(r#"{"table":[2,1]}"#).is_err());
    }
}
