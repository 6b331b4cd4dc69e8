//! Exact scalars: multivariate polynomials over the rationals in a small set
//! of parameter symbols (`k`, `k_s`, `k_l`, `lambda`, ...).
//!
//! A plain rational is the degree-0 case. All arithmetic is exact; equality
//! is structural equality of canonical forms (sorted monomials, no zero
//! coefficients).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

/// Exact rational number.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

// The symbol table is append-only; built-in symbols occupy fixed slots so
// that the monomial order is reproducible across runs.
static SYMBOLS: Lazy<Mutex<Vec<String>>> = Lazy::new(|| {
    Mutex::new(vec![
        "k".to_string(),
        "k_s".to_string(),
        "k_l".to_string(),
        "lambda".to_string(),
    ])
});

/// Interned parameter symbol. Ordering follows declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sym(u8);

impl Sym {
    /// Interns a symbol by name.
    pub fn new(name: &str) -> Sym {
        let mut table = SYMBOLS.lock().unwrap();
        if let Some(i) = table.iter().position(|s| s == name) {
            return Sym(i as u8);
        }
        assert!(table.len() < u8::MAX as usize, "symbol table full");
        table.push(name.to_string());
        Sym((table.len() - 1) as u8)
    }

    pub fn k() -> Sym {
        Sym(0)
    }
    pub fn k_s() -> Sym {
        Sym(1)
    }
    pub fn k_l() -> Sym {
        Sym(2)
    }
    pub fn lambda() -> Sym {
        Sym(3)
    }

    pub fn name(&self) -> String {
        SYMBOLS.lock().unwrap()[self.0 as usize].clone()
    }
}

/// Monomial in the parameter symbols: sorted `(symbol, exponent)` pairs,
/// exponents positive. The empty monomial is the constant 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(Vec<(Sym, u32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn sym(s: Sym) -> Mono {
        Mono(vec![(s, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut merged: BTreeMap<Sym, u32> = BTreeMap::new();
        for &(s, e) in self.0.iter().chain(other.0.iter()) {
            *merged.entry(s).or_insert(0) += e;
        }
        Mono(merged.into_iter().collect())
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(s, e)| {
                if e == 1 {
                    s.name()
                } else {
                    format!("{}^{}", s.name(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Exact scalar: canonical multivariate polynomial over `Q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<Mono, Q>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_q(Q::one())
    }

    pub fn from_q(c: Q) -> Scalar {
        let mut s = Scalar::default();
        if !c.is_zero() {
            s.terms.insert(Mono::one(), c);
        }
        s
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_q(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::from_q(qq(n, d))
    }

    pub fn sym(s: Sym) -> Scalar {
        let mut p = Scalar::default();
        p.terms.insert(Mono::sym(s), Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Total degree in the parameter symbols.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// The rational value, if no symbol occurs.
    pub fn as_q(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact (partial) evaluation: substitutes rationals for symbols.
    pub fn substitute(&self, bindings: &[(Sym, Q)]) -> Scalar {
        let mut out = Scalar::zero();
        'term: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(s, e) in &m.0 {
                if let Some((_, v)) = bindings.iter().find(|(b, _)| *b == s) {
                    if v.is_zero() && e > 0 {
                        continue 'term;
                    }
                    let mut p = Q::one();
                    for _ in 0..e {
                        p *= v;
                    }
                    coeff *= p;
                } else {
                    rest.push((s, e));
                }
            }
            out.add_term(Mono(rest), coeff);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}
