//! Projective classes of (n+1)-tuples of degree-d forms and the chordal
//! metric on them.
//!
//! A tuple is stored canonically: the first nonzero coefficient (scanning
//! components in order, monomials in descending graded-lex order) equals 1,
//! so projective equality of classes is data equality.

use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::{gcd_tuple, FieldKind, HomogeneousPoly, Monomial, Scalar};
use crate::{linalg, Error};

/// A point of W_d: the projective class of an (n+1)-tuple of homogeneous
/// degree-d forms on P^n, not all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapTuple {
    n: usize,
    degree: usize,
    components: Vec<HomogeneousPoly>,
}

/// Result of stripping the common factor of a tuple: `original` equals
/// `cofactor * reduced` exactly, with a monic cofactor and canonical
/// reduced tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub reduced: MapTuple,
    pub cofactor: HomogeneousPoly,
}

impl MapTuple {
    /// Validates and canonicalizes. Components must live in n+1 variables
    /// where n+1 is the tuple length, share one field and one degree (zero
    /// slots are compatible and adopt the tuple degree), and not all vanish.
    pub fn new(components: Vec<HomogeneousPoly>) -> Result<MapTuple, Error> {
        let nvars = components.len();
        if nvars < 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: nvars,
            });
        }
        let field = components[0].field();
        let mut degree = None;
        for p in &components {
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
            if p.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: p.nvars(),
                });
            }
            if !p.is_zero() {
                match degree {
                    None => degree = Some(p.degree()),
                    Some(d) if d != p.degree() => {
                        return Err(Error::DegreeMismatch {
                            expected: d,
                            found: p.degree(),
                        })
                    }
                    _ => {}
                }
            }
        }
        let degree = degree.ok_or(Error::AllZero)?;
        let mut components = components;
        for p in components.iter_mut() {
            if p.is_zero() && p.degree() != degree {
                *p = HomogeneousPoly::zero(field, nvars, degree);
            }
        }
        // Canonical scaling: first nonzero coefficient becomes 1.
        let lead = components
            .iter()
            .find_map(|p| p.leading_term().map(|(_, c)| c.clone()))
            .expect("some component is nonzero");
        if !lead.is_one() {
            let inv = lead.inverse();
            for p in components.iter_mut() {
                *p = p.scale(&inv);
            }
        }
        Ok(MapTuple {
            n: nvars - 1,
            degree,
            components,
        })
    }

    /// The identity tuple (x0 : x1 : ... : xn).
    pub fn identity(field: FieldKind, n: usize) -> MapTuple {
        let comps: Vec<_> = (0..=n)
            .map(|i| HomogeneousPoly::variable(field, n + 1, i).expect("index in range"))
            .collect();
        MapTuple::new(comps).expect("identity tuple is valid")
    }

    /// Ambient dimension n (the tuple has n+1 components).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> FieldKind {
        self.components[0].field()
    }

    pub fn components(&self) -> &[HomogeneousPoly] {
        &self.components
    }

    /// Multiplies every component by a nonzero form (a section of the
    /// product structure W_{d} -> W_{d+deg b}).
    pub fn mul_form(&self, b: &HomogeneousPoly) -> Result<MapTuple, Error> {
        if b.is_zero() {
            return Err(Error::AllZero);
        }
        let comps = self
            .components
            .iter()
            .map(|p| p.mul(b))
            .collect::<Result<Vec<_>, _>>()?;
        MapTuple::new(comps)
    }

    /// Strips the monic gcd of the components. `original = cofactor *
    /// reduced` holds as exact data; a tuple is "reduced" when the cofactor
    /// is 1.
    pub fn normalize(&self) -> ReducedForm {
        let g = gcd_tuple(&self.components).expect("tuple is not all zero");
        if g.degree() == 0 {
            return ReducedForm {
                reduced: self.clone(),
                cofactor: HomogeneousPoly::constant(
                    self.field(),
                    self.n + 1,
                    Scalar::one(self.field()),
                ),
            };
        }
        let comps: Vec<_> = self
            .components
            .iter()
            .map(|p| p.divide_exact(&g).expect("gcd divides"))
            .collect();
        ReducedForm {
            reduced: MapTuple::new(comps).expect("reduction keeps a nonzero component"),
            cofactor: g,
        }
    }

    pub fn is_reduced(&self) -> bool {
        gcd_tuple(&self.components)
            .map(|g| g.degree() == 0)
            .unwrap_or(false)
    }

    /// If the tuple equals `a * (x0 : ... : xn)` for a form a, returns a
    /// (necessarily nonzero and of degree d-1). This is the exact test for
    /// "acts as the identity on P^n".
    pub fn is_multiple_of_identity(&self) -> Option<HomogeneousPoly> {
        let a = multiple_of_identity_cofactor(&self.components)?;
        if a.is_zero() {
            None
        } else {
            Some(a)
        }
    }

    /// Coefficients of all components against the descending graded-lex
    /// monomial layout of the tuple degree; the canonical linear
    /// coordinates on W_d.
    pub fn coefficient_vector(&self) -> Vec<Scalar> {
        self.components
            .iter()
            .flat_map(|p| p.dense_coefficients())
            .collect()
    }

    /// Squared chordal distance between the classes of two tuples of the
    /// same degree: sum over index pairs of the squared 2x2 minors of their
    /// coefficient vectors, divided by both squared norms. Only defined
    /// over Q.
    pub fn distance_sq(&self, other: &MapTuple) -> Result<BigRational, Error> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.field() != FieldKind::Rational {
            return Err(Error::RationalFieldRequired);
        }
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let v = rational_vector(&self.coefficient_vector());
        let w = rational_vector(&other.coefficient_vector());
        let mut minors = BigRational::zero();
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                let m = &v[i] * &w[j] - &v[j] * &w[i];
                minors += &m * &m;
            }
        }
        Ok(minors / (dot(&v, &v) * dot(&w, &w)))
    }

    /// Squared chordal distance from this tuple to the fiber of the
    /// degree-arithmetic projection over a reduced tuple `g` of degree
    /// m <= d: the infimum of distance_sq over { b*g : b a nonzero form of
    /// degree d-m }. Exact via orthogonal projection onto the fiber's
    /// linear span.
    pub fn fiber_distance_sq(&self, g: &MapTuple) -> Result<BigRational, Error> {
        if self.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        if self.field() != FieldKind::Rational {
            return Err(Error::RationalFieldRequired);
        }
        if self.n != g.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: g.n,
            });
        }
        if g.degree > self.degree {
            return Err(Error::FiberDegreeTooLarge {
                m: g.degree,
                d: self.degree,
            });
        }
        if !g.is_reduced() {
            return Err(Error::NotReduced);
        }
        let s = self.degree - g.degree;
        let v = rational_vector(&self.coefficient_vector());
        // Basis of the fiber span: monomial multiples of g. They are
        // linearly independent because the polynomial ring is a domain.
        let basis: Vec<Vec<BigRational>> = Monomial::all_of_degree(self.n + 1, s)
            .into_iter()
            .map(|m| {
                let b = HomogeneousPoly::term(self.field(), m, Scalar::one(self.field()));
                let bg = g.mul_form(&b).expect("nonzero form");
                // mul_form re-canonicalizes; scaling does not change spans.
                rational_vector(&bg.coefficient_vector())
            })
            .collect();
        let k = basis.len();
        let gram: Vec<Vec<Scalar>> = (0..k)
            .map(|i| (0..k).map(|j| Scalar::Q(dot(&basis[i], &basis[j]))).collect())
            .collect();
        let rhs: Vec<Scalar> = (0..k).map(|i| Scalar::Q(dot(&basis[i], &v))).collect();
        let y = linalg::solve_square(&gram, &rhs).expect("Gram matrix is positive definite");
        // |proj|^2 = y . rhs ; distance^2 = 1 - |proj|^2 / |v|^2.
        let mut proj = BigRational::zero();
        for (yi, ci) in y.iter().zip(&rhs) {
            proj += yi.as_rational().unwrap() * ci.as_rational().unwrap();
        }
        Ok(BigRational::one() - proj / dot(&v, &v))
    }

    /// Image of a projective point under the tuple, in canonical form
    /// (first nonzero coordinate 1). `None` when every component vanishes
    /// (a base point). The zero vector is rejected.
    pub fn eval_point(&self, point: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        let pt = canonical_point(point.to_vec())?;
        if pt.len() != self.n + 1 {
            return Err(Error::ArityMismatch {
                expected: self.n + 1,
                found: pt.len(),
            });
        }
        let mut image = Vec::with_capacity(self.n + 1);
        for p in &self.components {
            image.push(p.eval(&pt)?);
        }
        if image.iter().all(|c| c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(canonical_point(image)?))
    }
}

impl fmt::Display for MapTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// If `comps = a * (x0 : ... : xn)` for a single form a, returns it. The
/// all-zero tuple yields the zero form; any failed relation yields None.
pub(crate) fn multiple_of_identity_cofactor(
    comps: &[HomogeneousPoly],
) -> Option<HomogeneousPoly> {
    let nvars = comps.len();
    let field = comps.first()?.field();
    let Some((i0, h)) = comps.iter().enumerate().find(|(_, p)| !p.is_zero()) else {
        let d = comps[0].degree();
        return Some(HomogeneousPoly::zero(
            field,
            nvars,
            d.saturating_sub(1),
        ));
    };
    let xi = HomogeneousPoly::variable(field, nvars, i0).ok()?;
    let a = h.divide_exact(&xi).ok()?;
    for (j, hj) in comps.iter().enumerate() {
        let xj = HomogeneousPoly::variable(field, nvars, j).ok()?;
        let expect = a.mul(&xj).ok()?;
        let mut lhs = hj.clone();
        if lhs.is_zero() && lhs.degree() != expect.degree() {
            lhs = HomogeneousPoly::zero(field, nvars, expect.degree());
        }
        if lhs != expect {
            return None;
        }
    }
    Some(a)
}

/// Canonicalizes projective coordinates: rejects the zero vector, scales
/// the first nonzero coordinate to 1.
pub fn canonical_point(mut coords: Vec<Scalar>) -> Result<Vec<Scalar>, Error> {
    let Some(first) = coords.iter().find(|c| !c.is_zero()).cloned() else {
        return Err(Error::ZeroPoint);
    };
    if !first.is_one() {
        let inv = first.inverse();
        for c in coords.iter_mut() {
            *c = &*c * &inv;
        }
    }
    Ok(coords)
}

fn rational_vector(v: &[Scalar]) -> Vec<BigRational> {
    v.iter()
        .map(|s| s.as_rational().expect("rational scalar").clone())
        .collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}
