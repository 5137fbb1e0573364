//! Polynomials in the bound summation indices with exact rational
//! coefficients, used for `q`-exponents, Pochhammer parameters, and
//! summation bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::series::Rational;

/// A monomial in the index variables: variable name -> power.
type Monomial = BTreeMap<String, u32>;

/// Polynomial over the bound index variables, e.g. `n*(3*n+1)/2 - j^2`.
///
/// At every evaluated index assignment the value must be an integer where it
/// is used as a `q`-exponent; that check happens at evaluation time.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ExpPoly {
    pub fn zero() -> ExpPoly {
        ExpPoly::default()
    }

    pub fn constant(c: Rational) -> ExpPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        ExpPoly { terms }
    }

    pub fn from_integer(n: i64) -> ExpPoly {
        ExpPoly::constant(crate::series::rat(n))
    }

    pub fn var(name: &str) -> ExpPoly {
        let mut m = Monomial::new();
        m.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, crate::series::rat(1));
        ExpPoly { terms }
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, p) in m2 {
                    *m.entry(v.clone()).or_insert(0) += p;
                }
                out.insert(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ExpPoly {
        let mut out = ExpPoly::from_integer(1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1
            && let Some(c) = self.terms.get(&Monomial::new())
        {
            return Some(c.clone());
        }
        None
    }

    /// Variables appearing in the polynomial.
    pub fn free_vars(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().flat_map(|m| m.keys()).map(String::as_str)
    }

    /// Exact value at an index assignment; `None` when a variable is unbound.
    pub fn eval(&self, bindings: &BTreeMap<String, i64>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, p) in m {
                let x = crate::series::rat(*bindings.get(v)?);
                for _ in 0..*p {
                    term *= &x;
                }
            }
            total += term;
        }
        Some(total)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, p) in m {
                if *p == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{p}")?;
                }
            }
        }
        Ok(())
    }
}
