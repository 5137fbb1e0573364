//! Canonical textual form of every cataloged identity, one string per side.
//! Evaluating a side's text must reproduce the corresponding builder's series
//! exactly; the round-trip is enforced by the acceptance suite.

use std::fmt;

use crate::catalog::IdentityId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn from_name(name: &str) -> Option<Side> {
        match name {
            "lhs" => Some(Side::Lhs),
            "rhs" => Some(Side::Rhs),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        })
    }
}

/// Tag lookup failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownTagError(pub String);

impl fmt::Display for UnknownTagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown identity tag '{}'", self.0)
    }
}

impl std::error::Error for UnknownTagError {}

/// The canonical text of one side of a cataloged identity.
///
/// The identities stated at argument `-q` are written with the substitution
/// already applied inside the summand (even powers keep their sign, odd
/// powers flip), which the base-2 Pochhammer symbols make mechanical.
pub fn canonical_text(id: IdentityId, side: Side) -> &'static str {
    use IdentityId::*;
    use Side::*;
    match (id, side) {
        (And1OuEu, Lhs) => "sum(n=0..inf, q^(2*n) / (poch(1,2;2)_(n) * poch(1,2*n+1;2)_inf))",
        (And1OuEu, Rhs) => "1/((1-q^1)*poch(1,2;2)_inf)",

        (And2OdEu, Lhs) => "sum(n=0..inf, q^(2*n) * poch(-1,2*n+1;2)_inf / poch(1,2;2)_(n))",
        (And2OdEu, Rhs) => "1/2*(1/poch(1,2;2)_inf + poch(-1,1;2)_inf^2)",

        (And3OuEd, Lhs) => {
            "sum(n=0..inf, poch(-1,2;2)_(n) * q^(2*n+2) / poch(-1,2*n+3;2)_inf)"
        }
        (And3OuEd, Rhs) => {
            "1/(2*poch(-1,1;2)_inf) * (poch(-1,1;1)_inf - 1 \
             - sum(n=0..inf, q^(n*(3*n-1)/2)*(1-q^(n))))"
        }

        (And4EuOu, Lhs) => {
            "sum(n=0..inf, q^(2*n+1) / (poch(1,1;2)_(n+1) * poch(1,2*n+2;2)_inf))"
        }
        (And4EuOu, Rhs) => "1/(1-q^1) * (1/poch(1,1;2)_inf - 1/poch(1,2;2)_inf)",

        (And5EdOu, Lhs) | (Thm1EdOu, Lhs) => {
            "sum(n=0..inf, -q^(2*n+1) * poch(-1,2*n+2;2)_inf / poch(-1,1;2)_(n+1))"
        }
        (And5EdOu, Rhs) => {
            "-poch(-1,2;2)_inf/2 * (2 - 1/poch(-1,1;1)_inf \
             - sum(n=0..inf, q^(n^2+n) / (poch(-1,1;1)_(n)^2 * (1+q^(n+1)))))"
        }

        (And6EuOd, Lhs) => {
            "sum(n=0..inf, -q^(2*n+1) * poch(1,1;2)_(n) / poch(1,2*n+2;2)_inf)"
        }
        (And6EuOd, Rhs) => {
            "-1/poch(1,2;2)_inf * sum(j=1..inf, sum(n=j..inf, \
             (-1)^(n+j) * q^(n*(3*n+1)/2 - j^2) * (1-q^(2*n+1))))"
        }

        (Thm1OdEd, Lhs) => {
            "sum(n=0..inf, q^(2*n+2) * poch(-1,2;2)_(n) * poch(-1,2*n+3;2)_inf)"
        }
        (Thm1OdEd, Rhs) => {
            "q*poch(-1,1;2)_inf/(1-q^1) * (1 - poch(-1,2;2)_inf/poch(-1,1;2)_inf)"
        }

        (Thm1EdOd, Lhs) => {
            "sum(n=0..inf, q^(2*n+1) * poch(-1,1;2)_(n) * poch(-1,2*n+2;2)_inf)"
        }
        (Thm1EdOd, Rhs) => {
            "q*poch(-1,2;2)_inf/(1-q^1) * (2 - poch(-1,1;2)_inf/poch(-1,2;2)_inf)"
        }

        (Thm1EdOu, Rhs) => {
            "-poch(-1,2;2)_inf/2 * (2 - 1/poch(-1,1;1)_inf \
             - 2/poch(1,1;1)_inf * bsum(n, (-1)^(n) * q^(3*n*(n+1)/2) / (1+q^(n))))"
        }

        (RemarkF, Lhs) => "sum(n=0..inf, q^(n^2) / poch(-1,1;1)_(n)^2)",
        (RemarkF, Rhs) => {
            "2/poch(1,1;1)_inf * bsum(n, (-1)^(n) * q^(n*(3*n+1)/2) / (1+q^(n)))"
        }

        (PfDecomp, Lhs) => {
            "sum(n=0..inf, (-1)^(n) * q^(3*n*(n+1)/2) * (1-q^(2*n+1)) \
             / ((1+q^(n)) * (1+q^(n+1))))"
        }
        (PfDecomp, Rhs) | (BilateralRecomb, Lhs) => {
            "sum(n=0..inf, (-1)^(n) * q^(3*n*(n+1)/2) \
             * (1/(1+q^(n)) - q^(n+1)/(1+q^(n+1))))"
        }
        (BilateralRecomb, Rhs) => "bsum(n, (-1)^(n) * q^(3*n*(n+1)/2) / (1+q^(n)))",

        (S3DoubleSum, Lhs) => {
            "sum(n=0..inf, -q^(2*n+1) * poch(1,1;2)_(n) * poch(-1,2*n+2;2)_inf)"
        }
        (S3DoubleSum, Rhs) => {
            "-q*poch(1,1;1)_inf*poch(-1,2;2)_inf/poch(1,2;2)_inf^2 \
             * sum(m=0..inf, sum(n=0..inf, \
             (-1)^(m) * q^(n*(n+3)/2 + 2*n*m + 2*m^2 + 2*m) * (1+q^(2*m+1))))"
        }

        (S3ThetaDiff, Lhs) => {
            "sum(m=0..inf, sum(n=0..inf, (-1)^(m) * q^(n*(n+3)/2 + 2*n*m + 2*m*(m+1)))) \
             - sum(b=1..inf, sum(a=1..inf, \
             (-1)^(b) * q^((a^2-3*a)/2 + 2*a*b + 2*b^2 - 2*b)))"
        }
        (S3ThetaDiff, Rhs) => {
            "2*poch(1,2;2)_inf/((1+q^1)*poch(1,1;2)_inf) \
             - poch(1,2;2)_inf/((1+q^1)*poch(-1,2;2)_inf)"
        }
    }
}

/// Tag-keyed variant for the CLI: `canonical_text_by_tag("thm1.od_ed", Rhs)`.
pub fn canonical_text_by_tag(tag: &str, side: Side) -> Result<&'static str, UnknownTagError> {
    IdentityId::from_tag(tag)
        .map(|id| canonical_text(id, side))
        .ok_or_else(|| UnknownTagError(tag.to_string()))
}
