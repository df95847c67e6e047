//! JSON descriptions of algebras and bimodules, plus a `family:args`
//! shorthand for the command line (`truncated:2`, `poly_quotient:[-1,0,1]`,
//! `polynomial_ring:2:6`, `tensor_algebra:2:4`, `upper_triangular:2`).

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Algebra, Bimodule};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Truncated {
        m: usize,
    },
    PolyQuotient {
        coeffs: Vec<i64>,
    },
    PolynomialRing {
        vars: usize,
        q_max: i64,
    },
    TensorAlgebra {
        dim: usize,
        q_max: i64,
    },
    UpperTriangular {
        n: usize,
    },
    StructureConstants {
        constants: Vec<Vec<Vec<i64>>>,
        unit: Vec<i64>,
        #[serde(default)]
        grading: Option<Vec<i64>>,
    },
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<Algebra> {
        match self {
            AlgebraSpec::Truncated { m } => Algebra::truncated(*m),
            AlgebraSpec::PolyQuotient { coeffs } => Algebra::poly_quotient(coeffs),
            AlgebraSpec::PolynomialRing { vars, q_max } => Algebra::polynomial_ring(*vars, *q_max),
            AlgebraSpec::TensorAlgebra { dim, q_max } => Algebra::tensor_algebra(*dim, *q_max),
            AlgebraSpec::UpperTriangular { n } => Algebra::upper_triangular(*n),
            AlgebraSpec::StructureConstants { constants, unit, grading } => {
                Algebra::from_structure_constants(constants, unit.clone(), grading.clone())
            }
        }
    }
}

impl AlgebraSpec {
    /// Parses like [`FromStr`], taking the degree bound of an infinite-rank
    /// family from `q_max` when the text leaves it out. There is no default.
    pub fn parse_with_q_max(s: &str, q_max: Option<i64>) -> Result<Self> {
        let s = s.trim();
        let needs_bound = |family: &str| family == "polynomial_ring" || family == "tensor_algebra";
        if s.starts_with('{') {
            let mut v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            if let Some(obj) = v.as_object_mut() {
                let family = obj.get("type").and_then(|t| t.as_str()).unwrap_or("").to_string();
                if needs_bound(&family) && !obj.contains_key("q_max") {
                    let q = q_max.ok_or_else(|| Error::Parse(format!("{family} needs q_max")))?;
                    obj.insert("q_max".into(), q.into());
                }
            }
            return serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()));
        }
        let (family, args) = s.split_once(':').unwrap_or((s, ""));
        if needs_bound(family) && !args.is_empty() && !args.contains(':') {
            let q = q_max.ok_or_else(|| Error::Parse(format!("{family} needs q_max")))?;
            return format!("{family}:{args}:{q}").parse();
        }
        s.parse()
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        let (family, args) = s.split_once(':').unwrap_or((s, ""));
        let bad = || Error::Parse(format!("cannot read algebra `{s}`"));
        let ints = |a: &str| -> Result<Vec<i64>> { a.split(':').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect() };
        let spec = match family {
            "truncated" | "A" => AlgebraSpec::Truncated { m: args.parse().map_err(|_| bad())? },
            "poly_quotient" => AlgebraSpec::PolyQuotient { coeffs: serde_json::from_str(args).map_err(|_| bad())? },
            "polynomial_ring" => match ints(args)?[..] {
                [vars, q_max] if vars > 0 => AlgebraSpec::PolynomialRing { vars: vars as usize, q_max },
                _ => return Err(bad()),
            },
            "tensor_algebra" => match ints(args)?[..] {
                [dim, q_max] if dim > 0 => AlgebraSpec::TensorAlgebra { dim: dim as usize, q_max },
                _ => return Err(bad()),
            },
            "upper_triangular" => AlgebraSpec::UpperTriangular { n: args.parse().map_err(|_| bad())? },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Regular,
    /// Generators in coordinates of the algebra basis.
    Ideal {
        generators: Vec<Vec<i64>>,
    },
}

impl ModuleSpec {
    pub fn build(&self, a: &Algebra) -> Result<Bimodule> {
        match self {
            ModuleSpec::Regular => Ok(Bimodule::regular(a)),
            ModuleSpec::Ideal { generators } => Bimodule::ideal(a, generators),
        }
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    /// Accepts JSON, `regular`, or `ideal:[[0,1]]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        match s.split_once(':') {
            None if s == "regular" => Ok(ModuleSpec::Regular),
            Some(("ideal", g)) => Ok(ModuleSpec::Ideal { generators: serde_json::from_str(g).map_err(|e| Error::Parse(e.to_string()))? }),
            _ => Err(Error::Parse(format!("cannot read module `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_bound_is_never_guessed() {
        let a = AlgebraSpec::parse_with_q_max("polynomial_ring:1", Some(8)).unwrap();
        assert_eq!(a, AlgebraSpec::PolynomialRing { vars: 1, q_max: 8 });
        assert!(AlgebraSpec::parse_with_q_max("polynomial_ring:1", None).is_err());
        let j = AlgebraSpec::parse_with_q_max(r#"{"type":"tensor_algebra","dim":2}"#, Some(3)).unwrap();
        assert_eq!(j, AlgebraSpec::TensorAlgebra { dim: 2, q_max: 3 });
        assert!(AlgebraSpec::parse_with_q_max(r#"{"type":"tensor_algebra","dim":2}"#, None).is_err());
        assert_eq!(AlgebraSpec::parse_with_q_max("truncated:3", None).unwrap(), AlgebraSpec::Truncated { m: 3 });
    }

    #[test]
    fn json_and_shorthand_agree() {
        let j: AlgebraSpec = r#"{"type":"truncated","m":2}"#.parse().unwrap();
        let s: AlgebraSpec = "truncated:2".parse().unwrap();
        assert_eq!(j, s);
        let p: AlgebraSpec = "poly_quotient:[-1,0,1]".parse().unwrap();
        assert_eq!(p, AlgebraSpec::PolyQuotient { coeffs: vec![-1, 0, 1] });
        let r: AlgebraSpec = r#"{"type":"polynomial_ring","vars":2,"q_max":4}"#.parse().unwrap();
        assert_eq!(r, "polynomial_ring:2:4".parse().unwrap());
        assert_eq!(r.build().unwrap().rank(), 15);
        assert!("nonsense:1".parse::<AlgebraSpec>().is_err());
        assert!(r#"{"type":"truncated"}"#.parse::<AlgebraSpec>().is_err());
    }

    #[test]
    fn structure_constants_round_trip() {
        let spec = AlgebraSpec::StructureConstants {
            constants: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
            unit: vec![1, 0],
            grading: Some(vec![0, 1]),
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text.parse::<AlgebraSpec>().unwrap(), spec);
        assert!(spec.build().unwrap().is_commutative());
    }

    #[test]
    fn module_specs() {
        let a = Algebra::truncated(2).unwrap();
        let m: ModuleSpec = r#"{"type":"ideal","generators":[[0,1]]}"#.parse().unwrap();
        assert_eq!(m, "ideal:[[0,1]]".parse().unwrap());
        assert_eq!(m.build(&a).unwrap().rank(), 1);
        assert_eq!("regular".parse::<ModuleSpec>().unwrap().build(&a).unwrap().rank(), 2);
    }
}
