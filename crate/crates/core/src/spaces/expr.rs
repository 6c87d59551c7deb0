use std::fmt;
use std::str::FromStr;

use super::SpaceError;

/// `Proj(d, e)` has cohomology `F2[x]/(x^(e+1))` with `|x| = d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Proj { d: u32, e: u32 },
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
}

fn prefix(d: u32) -> &'static str {
    match d {
        1 => "RP",
        2 => "CP",
        4 => "HP",
        8 => "OP",
        _ => unreachable!("projective family degree checked at construction"),
    }
}

impl SpaceExpr {
    pub fn proj(d: u32, e: u32) -> Result<Self, SpaceError> {
        if ![1, 2, 4, 8].contains(&d) || e == 0 {
            return Err(SpaceError::InvalidProj { d, e });
        }
        Ok(SpaceExpr::Proj { d, e })
    }

    pub fn rp(e: u32) -> Self {
        SpaceExpr::Proj { d: 1, e }
    }

    pub fn cp(e: u32) -> Self {
        SpaceExpr::Proj { d: 2, e }
    }

    pub fn hp(e: u32) -> Self {
        SpaceExpr::Proj { d: 4, e }
    }

    pub fn op(e: u32) -> Self {
        SpaceExpr::Proj { d: 8, e }
    }

    pub fn product(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn dimension(&self) -> u32 {
        match self {
            SpaceExpr::Proj { d, e } => d * e,
            SpaceExpr::Product(a, b) => a.dimension() + b.dimension(),
        }
    }

    /// Projective factors, left to right.
    pub fn leaves(&self) -> Vec<(u32, u32)> {
        match self {
            SpaceExpr::Proj { d, e } => vec![(*d, *e)],
            SpaceExpr::Product(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    /// Whether some factor is `OP(e)` with `e > 2`, which only exists as a formal ring.
    pub fn needs_formal(&self) -> bool {
        self.leaves().iter().any(|&(d, e)| d == 8 && e > 2)
    }

    /// Euler characteristic from the Betti numbers: `e + 1` for even `d`,
    /// `(e + 1) mod 2` for `RP(e)`, multiplied over the factors.
    pub fn euler_characteristic(&self) -> i64 {
        self.leaves().iter().map(|&(d, e)| if d % 2 == 0 { i64::from(e) + 1 } else { i64::from(e % 2 == 0) }).product()
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Proj { d, e } => write!(f, "{}({e})", prefix(*d)),
            SpaceExpr::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

fn parse_factor(s: &str) -> Result<SpaceExpr, SpaceError> {
    let bad = || SpaceError::Parse(format!("{s:?} is not of the form RP(n), CP(n), HP(n) or OP(n)"));
    let s = s.trim();
    let d = match s.get(..2).ok_or_else(bad)? {
        "RP" => 1,
        "CP" => 2,
        "HP" => 4,
        "OP" => 8,
        _ => return Err(bad()),
    };
    let inner = s[2..].strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let e: u32 = inner.trim().parse().map_err(|_| bad())?;
    SpaceExpr::proj(d, e)
}

impl FromStr for SpaceExpr {
    type Err = SpaceError;

    /// Products associate to the left: `AxBxC` is `(A x B) x C`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = s.split('x').map(parse_factor);
        let first = factors.next().ok_or_else(|| SpaceError::Parse("empty space name".into()))??;
        factors.try_fold(first, |acc, f| Ok(SpaceExpr::product(acc, f?)))
    }
}
