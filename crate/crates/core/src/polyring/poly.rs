use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::monomial::Monomial;
use super::scalar::{display_signed, FieldKind, Scalar};
use crate::Error;

/// A sparse homogeneous polynomial in a fixed number of variables.
///
/// Invariants: every stored monomial has `nvars` variables and total degree
/// equal to `degree`, and no stored coefficient is zero. The zero polynomial
/// keeps a nominal `degree` so that tuple slots can state their intended
/// degree; degree checks treat zero as compatible with any degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    field: FieldKind,
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomogeneousPoly {
    pub fn zero(field: FieldKind, nvars: usize, degree: usize) -> HomogeneousPoly {
        HomogeneousPoly {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldKind, nvars: usize, c: Scalar) -> HomogeneousPoly {
        let mut p = HomogeneousPoly::zero(field, nvars, 0);
        if !c.is_zero() {
            assert!(c.field() == field, "constant over the wrong field");
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The single term `c * m`. Degree is taken from the monomial.
    pub fn term(field: FieldKind, m: Monomial, c: Scalar) -> HomogeneousPoly {
        let mut p = HomogeneousPoly::zero(field, m.nvars(), m.degree());
        if !c.is_zero() {
            assert!(c.field() == field, "term over the wrong field");
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_i` as a degree-1 polynomial.
    pub fn variable(field: FieldKind, nvars: usize, i: usize) -> Result<HomogeneousPoly, Error> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: nvars,
            });
        }
        Ok(HomogeneousPoly::term(
            field,
            Monomial::variable(nvars, i),
            Scalar::one(field),
        ))
    }

    /// Builds from raw (monomial, coefficient) pairs, checking homogeneity.
    pub fn from_terms<I>(
        field: FieldKind,
        nvars: usize,
        degree: usize,
        iter: I,
    ) -> Result<HomogeneousPoly, Error>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = HomogeneousPoly::zero(field, nvars, degree);
        for (m, c) in iter {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: m.degree(),
                });
            }
            if c.is_zero() {
                continue;
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            let entry = p.terms.entry(m);
            match entry {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = &*o.get() + &c;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Leading (graded-lex largest) term, None for zero.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    fn check_same_ring(&self, other: &HomogeneousPoly) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    /// Sum. Degrees must agree unless one side is zero; the sum of two zero
    /// polynomials keeps the larger nominal degree.
    pub fn add(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, Error> {
        self.check_same_ring(other)?;
        if self.is_zero() && other.is_zero() {
            return Ok(HomogeneousPoly::zero(
                self.field,
                self.nvars,
                self.degree.max(other.degree),
            ));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.entry(m.clone()) {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = &*o.get() + c;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        Ok(HomogeneousPoly {
            field: self.field,
            nvars: self.nvars,
            degree: self.degree,
            terms,
        })
    }

    pub fn neg(&self) -> HomogeneousPoly {
        HomogeneousPoly {
            field: self.field,
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, Error> {
        self.add(&other.neg())
    }

    /// Multiplies by a scalar of the same field.
    pub fn scale(&self, c: &Scalar) -> HomogeneousPoly {
        assert!(c.field() == self.field, "scale across fields");
        if c.is_zero() {
            return HomogeneousPoly::zero(self.field, self.nvars, self.degree);
        }
        HomogeneousPoly {
            field: self.field,
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Product; degrees add (also for zero operands).
    pub fn mul(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, Error> {
        self.check_same_ring(other)?;
        let degree = self.degree + other.degree;
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.entry(m) {
                    alloc::collections::btree_map::Entry::Vacant(v) => {
                        if !c.is_zero() {
                            v.insert(c);
                        }
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = &*o.get() + &c;
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
        Ok(HomogeneousPoly {
            field: self.field,
            nvars: self.nvars,
            degree,
            terms,
        })
    }

    pub fn pow(&self, k: usize) -> HomogeneousPoly {
        let mut acc = HomogeneousPoly::constant(self.field, self.nvars, Scalar::one(self.field));
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Substitutes `polys[i]` for variable `i`. All substituted polynomials
    /// must share one ring and one degree e (zero entries are compatible);
    /// the result is homogeneous of degree `self.degree() * e`.
    pub fn substitute(&self, polys: &[HomogeneousPoly]) -> Result<HomogeneousPoly, Error> {
        if polys.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: polys.len(),
            });
        }
        let first = polys.first().ok_or(Error::ArityMismatch {
            expected: 1,
            found: 0,
        })?;
        let (tfield, tnvars) = (first.field, first.nvars);
        let mut e = None;
        for q in polys {
            if q.field != tfield {
                return Err(Error::FieldMismatch);
            }
            if q.nvars != tnvars {
                return Err(Error::ArityMismatch {
                    expected: tnvars,
                    found: q.nvars,
                });
            }
            if !q.is_zero() {
                match e {
                    None => e = Some(q.degree),
                    Some(d) if d != q.degree => {
                        return Err(Error::DegreeMismatch {
                            expected: d,
                            found: q.degree,
                        })
                    }
                    _ => {}
                }
            }
        }
        let e = e.unwrap_or_else(|| polys[0].degree);
        if self.field != tfield {
            return Err(Error::FieldMismatch);
        }

        let out_degree = self.degree * e;
        let mut acc = HomogeneousPoly::zero(tfield, tnvars, out_degree);
        // Per-variable power cache; exponents repeat heavily across terms.
        let mut powers: Vec<Vec<HomogeneousPoly>> = polys
            .iter()
            .map(|q| {
                alloc::vec![HomogeneousPoly::constant(
                    q.field,
                    q.nvars,
                    Scalar::one(q.field)
                )]
            })
            .collect();
        for (m, c) in &self.terms {
            let mut prod = HomogeneousPoly::constant(tfield, tnvars, c.clone());
            for i in 0..self.nvars {
                let want = m.exponent(i) as usize;
                if want == 0 {
                    continue;
                }
                while powers[i].len() <= want {
                    let next = powers[i].last().unwrap().mul(&polys[i])?;
                    powers[i].push(next);
                }
                prod = prod.mul(&powers[i][want])?;
                if prod.is_zero() {
                    break;
                }
            }
            if !prod.is_zero() {
                prod.degree = out_degree;
                acc = acc.add(&prod)?;
            }
        }
        acc.degree = out_degree;
        Ok(acc)
    }

    /// Partial derivative with respect to `x_i`. In characteristic p,
    /// exponents divisible by p drop out.
    pub fn partial_derivative(&self, i: usize) -> Result<HomogeneousPoly, Error> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.nvars,
            });
        }
        let degree = self.degree.saturating_sub(1);
        let mut out = HomogeneousPoly::zero(self.field, self.nvars, degree);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let factor = Scalar::from_integer(self.field, e as i64);
            let c = c * &factor;
            if c.is_zero() {
                continue;
            }
            out.terms.insert(m.with_exponent(i, e - 1), c);
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; `Err(NotDivisible)` when the division
    /// leaves a remainder. Runs a leading-term elimination loop in graded-lex
    /// order, which is complete for exact multivariate division.
    pub fn divide_exact(&self, divisor: &HomogeneousPoly) -> Result<HomogeneousPoly, Error> {
        self.check_same_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(HomogeneousPoly::zero(
                self.field,
                self.nvars,
                self.degree.saturating_sub(divisor.degree),
            ));
        }
        if self.degree < divisor.degree {
            return Err(Error::NotDivisible);
        }
        let qdeg = self.degree - divisor.degree;
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let dc_inv = dc.inverse();
        let mut rem = self.clone();
        let mut quot = HomogeneousPoly::zero(self.field, self.nvars, qdeg);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = match rm.checked_div(&dm) {
                Some(qm) => qm,
                None => return Err(Error::NotDivisible),
            };
            let qc = rc * &dc_inv;
            let t = HomogeneousPoly::term(self.field, qm, qc);
            rem = rem.sub(&t.mul(divisor)?)?;
            debug_assert!(t.leading_term().is_some());
            quot = quot.add(&t)?;
        }
        quot.degree = qdeg;
        Ok(quot)
    }

    /// Evaluates at an affine point (one scalar per variable).
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, Error> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        for c in point {
            if c.field() != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = &t * v;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Divides by the leading coefficient; identity on zero.
    pub fn monic(&self) -> HomogeneousPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    self.scale(&c.inverse())
                }
            }
        }
    }

    /// Coefficients in descending graded-lex order over all monomials of the
    /// nominal degree. This fixed layout is shared by the metric and the
    /// census ranking.
    pub fn dense_coefficients(&self) -> Vec<Scalar> {
        Monomial::all_of_degree(self.nvars, self.degree)
            .into_iter()
            .map(|m| {
                self.terms
                    .get(&m)
                    .cloned()
                    .unwrap_or_else(|| Scalar::zero(self.field))
            })
            .collect()
    }

    pub(crate) fn render(&self, f: &mut fmt::Formatter<'_>, symbol: char) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending order: leading term first.
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = display_signed(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag == "1";
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if coeff_is_one {
                m.render(f, symbol)?;
            } else {
                write!(f, "{mag}*")?;
                m.render(f, symbol)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for HomogeneousPoly {
    /// Canonical text: terms in descending graded-lex order, variables named
    /// `x0`, `x1`, ... Round-trips through the shared grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 'x')
    }
}
