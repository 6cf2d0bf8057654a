use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial in a fixed number of variables.
///
/// The global order is graded lexicographic with `x0 > x1 > ... > xn`:
/// higher total degree wins, ties break on the first differing exponent
/// (larger exponent of an earlier variable is larger). Every leading-term
/// convention in the crate refers to this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Monomial {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
        }
    }

    /// The single variable `x_i` as a monomial.
    pub fn variable(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Component-wise quotient, None when any exponent would go negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.checked_div(self).is_some()
    }

    pub fn with_exponent(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = e;
        m
    }

    /// All monomials of the given degree over `nvars` variables, listed in
    /// descending graded-lex order (the canonical coefficient layout).
    pub fn all_of_degree(nvars: usize, degree: usize) -> alloc::vec::Vec<Monomial> {
        let mut out = alloc::vec::Vec::new();
        let mut exps: SmallVec<[u16; 8]> = smallvec::smallvec![0; nvars];
        fn rec(
            exps: &mut SmallVec<[u16; 8]>,
            pos: usize,
            remaining: usize,
            out: &mut alloc::vec::Vec<Monomial>,
        ) {
            if pos + 1 == exps.len() {
                exps[pos] = remaining as u16;
                out.push(Monomial { exps: exps.clone() });
                return;
            }
            // Descending first exponent gives descending graded-lex.
            for e in (0..=remaining).rev() {
                exps[pos] = e as u16;
                rec(exps, pos + 1, remaining - e, out);
            }
        }
        if nvars == 0 {
            return out;
        }
        rec(&mut exps, 0, degree, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.exps.cmp(&other.exps),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// Renders with the given variable symbol, e.g. `x0^2*x1`.
    /// Degree-zero monomials render as `1`.
    pub(crate) fn render(&self, f: &mut fmt::Formatter<'_>, symbol: char) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{symbol}{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x0 = Monomial::new(&[1, 0, 0]);
        let x1 = Monomial::new(&[0, 1, 0]);
        let x2 = Monomial::new(&[0, 0, 1]);
        let x0x1 = x0.mul(&x1);
        let x2sq = x2.mul(&x2);
        assert!(x0 > x1 && x1 > x2);
        assert!(x0x1 > x0, "degree dominates");
        assert!(x0x1 > x2sq, "lex breaks degree ties");
    }

    #[test]
    fn degree_two_enumeration_descends() {
        let ms = Monomial::all_of_degree(3, 2);
        let expected = [
            [2, 0, 0],
            [1, 1, 0],
            [1, 0, 1],
            [0, 2, 0],
            [0, 1, 1],
            [0, 0, 2],
        ];
        assert_eq!(ms.len(), 6);
        for (m, e) in ms.iter().zip(expected.iter()) {
            assert_eq!(m.exponents(), e);
        }
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn division() {
        let m = Monomial::new(&[2, 1, 0]);
        let d = Monomial::new(&[1, 0, 0]);
        assert_eq!(m.checked_div(&d), Some(Monomial::new(&[1, 1, 0])));
        assert_eq!(d.checked_div(&m), None);
        assert!(d.divides(&m));
    }
}
