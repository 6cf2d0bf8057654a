//! Families of map tuples varying over a projective parameter space.
//!
//! A family component is bihomogeneous: homogeneous of one degree in the
//! coordinates x and of a common degree in the parameters a. The base of
//! the family is cut out by homogeneous constraints in the parameters
//! alone; specialization checks exact constraint membership and returns the
//! canonical tuple at the point.
//!
//! There is deliberately no symbolic gcd over constrained bases (quotient
//! rings): generic reduction of the shared x-factor is offered only for
//! families with a free base, where the ordinary polynomial gcd over the
//! combined ring k[a, x] is the honest answer. Constrained families are
//! analyzed pointwise or pulled back along a parametrization of the base.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::polyring::{gcd_tuple, FieldKind, HomogeneousPoly, Monomial, Scalar};
use crate::wspace::{canonical_point, MapTuple};
use crate::Error;

/// A bihomogeneous polynomial: an x-polynomial whose coefficients are
/// homogeneous polynomials in the parameters. Zero coefficient polynomials
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: FieldKind,
    x_arity: usize,
    param_arity: usize,
    x_degree: usize,
    param_degree: usize,
    terms: BTreeMap<Monomial, HomogeneousPoly>,
}

impl BiPoly {
    pub fn zero(
        field: FieldKind,
        x_arity: usize,
        param_arity: usize,
        x_degree: usize,
        param_degree: usize,
    ) -> BiPoly {
        BiPoly {
            field,
            x_arity,
            param_arity,
            x_degree,
            param_degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from (x-monomial, parameter-coefficient) pairs.
    pub fn from_terms<I>(
        field: FieldKind,
        x_arity: usize,
        param_arity: usize,
        x_degree: usize,
        param_degree: usize,
        iter: I,
    ) -> Result<BiPoly, Error>
    where
        I: IntoIterator<Item = (Monomial, HomogeneousPoly)>,
    {
        let mut b = BiPoly::zero(field, x_arity, param_arity, x_degree, param_degree);
        for (m, c) in iter {
            if m.nvars() != x_arity {
                return Err(Error::ArityMismatch {
                    expected: x_arity,
                    found: m.nvars(),
                });
            }
            if m.degree() != x_degree {
                return Err(Error::DegreeMismatch {
                    expected: x_degree,
                    found: m.degree(),
                });
            }
            if c.is_zero() {
                continue;
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            if c.nvars() != param_arity {
                return Err(Error::ArityMismatch {
                    expected: param_arity,
                    found: c.nvars(),
                });
            }
            if c.degree() != param_degree {
                return Err(Error::DegreeMismatch {
                    expected: param_degree,
                    found: c.degree(),
                });
            }
            let merged = match b.terms.remove(&m) {
                None => c,
                Some(prev) => prev.add(&c)?,
            };
            if !merged.is_zero() {
                b.terms.insert(m, merged);
            }
        }
        Ok(b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn x_degree(&self) -> usize {
        self.x_degree
    }

    pub fn param_degree(&self) -> usize {
        self.param_degree
    }

    pub fn param_arity(&self) -> usize {
        self.param_arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &HomogeneousPoly)> {
        self.terms.iter()
    }

    /// Evaluates the parameter coefficients at a point, leaving an
    /// x-polynomial of the x-degree.
    pub fn eval_params(&self, point: &[Scalar]) -> Result<HomogeneousPoly, Error> {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        for (m, c) in &self.terms {
            terms.push((m.clone(), c.eval(point)?));
        }
        HomogeneousPoly::from_terms(self.field, self.x_arity, self.x_degree, terms)
    }

    /// Substitutes polynomials for the parameters (pullback along a map of
    /// parameter spaces). The substituted polynomials follow the rules of
    /// [`HomogeneousPoly::substitute`].
    pub fn compose_params(&self, maps: &[HomogeneousPoly]) -> Result<BiPoly, Error> {
        let (new_arity, map_degree) = substitution_shape(self.param_arity, maps)?;
        let mut out = BiPoly::zero(
            self.field,
            self.x_arity,
            new_arity,
            self.x_degree,
            self.param_degree * map_degree,
        );
        for (m, c) in &self.terms {
            let nc = c.substitute(maps)?;
            if !nc.is_zero() {
                out.terms.insert(m.clone(), nc);
            }
        }
        Ok(out)
    }

    /// Flattens into one homogeneous polynomial over the combined ring with
    /// the parameters first (indices `0..param_arity`) and the x-variables
    /// after them.
    pub(crate) fn to_combined(&self) -> HomogeneousPoly {
        let nvars = self.param_arity + self.x_arity;
        let degree = self.param_degree + self.x_degree;
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        for (xm, c) in &self.terms {
            for (pm, s) in c.terms() {
                let mut exps: Vec<u16> = Vec::with_capacity(nvars);
                exps.extend_from_slice(pm.exponents());
                exps.extend_from_slice(xm.exponents());
                terms.push((Monomial::new(&exps), s.clone()));
            }
        }
        HomogeneousPoly::from_terms(self.field, nvars, degree, terms)
            .expect("combined polynomial is homogeneous")
    }

    /// Splits a combined-ring polynomial back into bihomogeneous form,
    /// rejecting mixed bidegrees.
    pub(crate) fn from_combined(
        p: &HomogeneousPoly,
        param_arity: usize,
        x_arity: usize,
    ) -> Result<BiPoly, Error> {
        let field = p.field();
        let mut split: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        let mut bidegree: Option<(usize, usize)> = None;
        for (m, c) in p.terms() {
            let (pe, xe) = m.exponents().split_at(param_arity);
            let pm = Monomial::new(pe);
            let xm = Monomial::new(xe);
            let bd = (pm.degree(), xm.degree());
            match bidegree {
                None => bidegree = Some(bd),
                Some(prev) if prev != bd => {
                    return Err(Error::Unsupported(alloc::string::String::from(
                        "polynomial is not bihomogeneous",
                    )))
                }
                _ => {}
            }
            split.entry(xm).or_default().push((pm, c.clone()));
        }
        let (pd, xd) = bidegree.unwrap_or((0, 0));
        BiPoly::from_terms(
            field,
            x_arity,
            param_arity,
            xd,
            pd,
            split.into_iter().map(|(xm, coeffs)| {
                let c = HomogeneousPoly::from_terms(field, param_arity, pd, coeffs)
                    .expect("homogeneous parameter part");
                (xm, c)
            }),
        )
    }
}

/// A family of points of W_d over a base in parameter projective space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricFamily {
    n: usize,
    degree: usize,
    param_arity: usize,
    param_degree: usize,
    field: FieldKind,
    components: Vec<BiPoly>,
    base_constraints: Vec<HomogeneousPoly>,
}

/// Reduced-degree report of a family at chosen parameter points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub entries: Vec<ProfileEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    /// Canonical coordinates of the parameter point.
    pub point: Vec<Scalar>,
    /// Degree of the reduced specialized tuple.
    pub reduced_degree: usize,
    /// Whether the specialization is a form multiple of the identity.
    pub is_identity: bool,
}

/// A family together with the common x-factor stripped from it; valid only
/// over a free base. `family * cofactor` recovers the original components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericReduction {
    pub family: ParametricFamily,
    pub cofactor: BiPoly,
}

impl ParametricFamily {
    /// Validates shapes: components share one bidegree pattern (zero
    /// components are compatible), constraints are homogeneous in the
    /// parameters. Identically-zero constraints are dropped.
    pub fn new(
        components: Vec<BiPoly>,
        base_constraints: Vec<HomogeneousPoly>,
    ) -> Result<ParametricFamily, Error> {
        let nvars = components.len();
        if nvars < 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: nvars,
            });
        }
        let field = components[0].field;
        let param_arity = components[0].param_arity;
        let mut degrees: Option<(usize, usize)> = None;
        for c in &components {
            if c.field != field {
                return Err(Error::FieldMismatch);
            }
            if c.x_arity != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: c.x_arity,
                });
            }
            if c.param_arity != param_arity {
                return Err(Error::ArityMismatch {
                    expected: param_arity,
                    found: c.param_arity,
                });
            }
            if !c.is_zero() {
                match degrees {
                    None => degrees = Some((c.x_degree, c.param_degree)),
                    Some((xd, _)) if xd != c.x_degree => {
                        return Err(Error::DegreeMismatch {
                            expected: xd,
                            found: c.x_degree,
                        })
                    }
                    Some((_, pd)) if pd != c.param_degree => {
                        return Err(Error::DegreeMismatch {
                            expected: pd,
                            found: c.param_degree,
                        })
                    }
                    _ => {}
                }
            }
        }
        let (degree, param_degree) = degrees.ok_or(Error::AllZero)?;
        let mut components = components;
        for c in components.iter_mut() {
            if c.is_zero() {
                *c = BiPoly::zero(field, nvars, param_arity, degree, param_degree);
            }
        }
        let mut constraints = Vec::new();
        for g in base_constraints {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.nvars() != param_arity {
                return Err(Error::ArityMismatch {
                    expected: param_arity,
                    found: g.nvars(),
                });
            }
            if !g.is_zero() {
                constraints.push(g);
            }
        }
        Ok(ParametricFamily {
            n: nvars - 1,
            degree,
            param_arity,
            param_degree,
            field,
            components,
            base_constraints: constraints,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree in x of the family members.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn param_arity(&self) -> usize {
        self.param_arity
    }

    pub fn param_degree(&self) -> usize {
        self.param_degree
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn components(&self) -> &[BiPoly] {
        &self.components
    }

    pub fn base_constraints(&self) -> &[HomogeneousPoly] {
        &self.base_constraints
    }

    /// The member tuple at a parameter point. The point must be nonzero,
    /// satisfy every base constraint exactly, and leave at least one
    /// component alive.
    pub fn specialize(&self, point: &[Scalar]) -> Result<MapTuple, Error> {
        let pt = self.checked_point(point)?;
        let mut comps = Vec::with_capacity(self.components.len());
        for c in &self.components {
            comps.push(c.eval_params(&pt)?);
        }
        if comps.iter().all(|p| p.is_zero()) {
            return Err(Error::UndefinedAtPoint);
        }
        MapTuple::new(comps)
    }

    /// Reduced degrees and identity flags at the given parameter points.
    pub fn degree_profile(&self, points: &[Vec<Scalar>]) -> Result<DegreeProfile, Error> {
        let mut entries = Vec::with_capacity(points.len());
        for point in points {
            let t = self.specialize(point)?;
            let reduced = t.normalize().reduced;
            entries.push(ProfileEntry {
                point: canonical_point(point.clone())?,
                reduced_degree: reduced.degree(),
                is_identity: t.is_multiple_of_identity().is_some(),
            });
        }
        Ok(DegreeProfile { entries })
    }

    /// Value at the point of the generically reduced model of the family:
    /// the family's common x-factor is stripped symbolically first, and the
    /// result is NOT reduced further, so it reports the honest W_d class of
    /// the constant-degree lift even where that class degenerates. Requires
    /// a free base.
    pub fn reduced_lift_at_point(&self, point: &[Scalar]) -> Result<MapTuple, Error> {
        let reduction = self.reduce_generic()?;
        reduction.family.specialize(point)
    }

    /// Strips the gcd of the components over the combined ring k[a, x] in
    /// its x-part; only meaningful (and only allowed) over a free base.
    /// The cofactor is the full bihomogeneous common factor; its x-degree
    /// may be zero.
    pub fn reduce_generic(&self) -> Result<GenericReduction, Error> {
        if !self.base_constraints.is_empty() {
            return Err(Error::ConstrainedBase);
        }
        let combined: Vec<HomogeneousPoly> =
            self.components.iter().map(|c| c.to_combined()).collect();
        let g = gcd_tuple(&combined)?;
        let cofactor = BiPoly::from_combined(&g, self.param_arity, self.n + 1)?;
        let reduced: Vec<BiPoly> = combined
            .iter()
            .map(|p| {
                let q = p.divide_exact(&g).expect("gcd divides");
                BiPoly::from_combined(&q, self.param_arity, self.n + 1)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenericReduction {
            family: ParametricFamily::new(reduced, Vec::new())?,
            cofactor,
        })
    }

    /// Pullback of the family along a map of parameter spaces: substitutes
    /// into components and constraints; constraints that vanish identically
    /// under the pullback are dropped.
    pub fn compose_params(&self, maps: &[HomogeneousPoly]) -> Result<ParametricFamily, Error> {
        let components = self
            .components
            .iter()
            .map(|c| c.compose_params(maps))
            .collect::<Result<Vec<_>, _>>()?;
        let constraints = self
            .base_constraints
            .iter()
            .map(|g| g.substitute(maps))
            .collect::<Result<Vec<_>, _>>()?;
        ParametricFamily::new(components, constraints)
    }

    fn checked_point(&self, point: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if point.len() != self.param_arity {
            return Err(Error::ArityMismatch {
                expected: self.param_arity,
                found: point.len(),
            });
        }
        for c in point {
            if c.field() != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        let pt = canonical_point(point.to_vec())?;
        for (idx, g) in self.base_constraints.iter().enumerate() {
            if !g.eval(&pt)?.is_zero() {
                return Err(Error::OffBaseVariety { constraint: idx });
            }
        }
        Ok(pt)
    }
}

fn substitution_shape(
    expected_arity: usize,
    maps: &[HomogeneousPoly],
) -> Result<(usize, usize), Error> {
    if maps.len() != expected_arity {
        return Err(Error::ArityMismatch {
            expected: expected_arity,
            found: maps.len(),
        });
    }
    let first = maps.first().ok_or(Error::ArityMismatch {
        expected: 1,
        found: 0,
    })?;
    let mut degree = None;
    for m in maps {
        if m.nvars() != first.nvars() {
            return Err(Error::ArityMismatch {
                expected: first.nvars(),
                found: m.nvars(),
            });
        }
        if !m.is_zero() {
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return Err(Error::DegreeMismatch {
                        expected: d,
                        found: m.degree(),
                    })
                }
                _ => {}
            }
        }
    }
    Ok((first.nvars(), degree.unwrap_or_else(|| first.degree())))
}

/// Linear-times-coordinate family of P^n (n >= 2) with parameters
/// (a0 : a1 : a2) over a free base: component i is `x_i * (a0*x2 + a2*x0)`
/// except component 1, which is `x1 * (a0*x2 + a1*x0)`. The members reduce
/// to the identity exactly on the parameter line a1 = a2 (away from the
/// degenerate points a0 = a1 = 0 and a0 = a2 = 0) and have reduced degree
/// 2 elsewhere on a0 != 0.
pub fn identity_line_family(field: FieldKind, n: usize) -> ParametricFamily {
    assert!(n >= 2, "needs at least three coordinates");
    let lin = |i: usize| -> HomogeneousPoly {
        // a0*x2 + a_i*x0 as a BiPoly is assembled per x-monomial below.
        HomogeneousPoly::variable(field, 3, i).expect("parameter index")
    };
    let comps: Vec<BiPoly> = (0..=n)
        .map(|i| {
            let which = if i == 1 { 1 } else { 2 };
            let xi = Monomial::variable(n + 1, i);
            let x0 = Monomial::variable(n + 1, 0);
            let x2 = Monomial::variable(n + 1, 2);
            BiPoly::from_terms(
                field,
                n + 1,
                3,
                2,
                1,
                [
                    (xi.mul(&x2), lin(0)),
                    (xi.mul(&x0), lin(which)),
                ],
            )
            .expect("valid component")
        })
        .collect();
    ParametricFamily::new(comps, Vec::new()).expect("valid family")
}

/// Family over the nodal plane cubic `a0*a1*a2 = a0^3 + a1^3` in the
/// parameter plane: with R = a0*x2^2 + a2*x0*x2 + a1*x0^2 and
/// S = a0*x2^2 + (a1 + a2)*x0*x2 + (a0 + a1)*x0^2, the components are
/// `x_i * R` except component 1, which is `x1 * S`. On the curve minus its
/// node both factors split off a common line, leaving reduced degree 2;
/// at the node (0 : 0 : 1) the member is the identity.
pub fn nodal_cubic_family(field: FieldKind, n: usize) -> ParametricFamily {
    assert!(n >= 2, "needs at least three coordinates");
    let pvar = |i: usize| HomogeneousPoly::variable(field, 3, i).expect("parameter index");
    let r_coeffs = [pvar(0), pvar(2), pvar(1)];
    let s_coeffs = [
        pvar(0),
        pvar(1).add(&pvar(2)).expect("same degree"),
        pvar(0).add(&pvar(1)).expect("same degree"),
    ];
    let comps: Vec<BiPoly> = (0..=n)
        .map(|i| {
            let coeffs = if i == 1 { &s_coeffs } else { &r_coeffs };
            let xi = Monomial::variable(n + 1, i);
            let x0 = Monomial::variable(n + 1, 0);
            let x2 = Monomial::variable(n + 1, 2);
            BiPoly::from_terms(
                field,
                n + 1,
                3,
                3,
                1,
                [
                    (xi.mul(&x2).mul(&x2), coeffs[0].clone()),
                    (xi.mul(&x0).mul(&x2), coeffs[1].clone()),
                    (xi.mul(&x0).mul(&x0), coeffs[2].clone()),
                ],
            )
            .expect("valid component")
        })
        .collect();
    // a0*a1*a2 - a0^3 - a1^3.
    let constraint = HomogeneousPoly::from_terms(
        field,
        3,
        3,
        [
            (Monomial::new(&[1, 1, 1]), Scalar::one(field)),
            (Monomial::new(&[3, 0, 0]), -&Scalar::one(field)),
            (Monomial::new(&[0, 3, 0]), -&Scalar::one(field)),
        ],
    )
    .expect("homogeneous constraint");
    ParametricFamily::new(comps, alloc::vec![constraint]).expect("valid family")
}

/// The standard degree-3 parametrization (u^2*v : u*v^2 : u^3 + v^3) of the
/// nodal cubic; it maps P^1 onto the curve and sends both (1:0) and (0:1)
/// to the node.
pub fn nodal_cubic_parametrization(field: FieldKind) -> Vec<HomogeneousPoly> {
    let one = Scalar::one(field);
    alloc::vec![
        HomogeneousPoly::term(field, Monomial::new(&[2, 1]), one.clone()),
        HomogeneousPoly::term(field, Monomial::new(&[1, 2]), one.clone()),
        HomogeneousPoly::from_terms(
            field,
            2,
            3,
            [
                (Monomial::new(&[3, 0]), one.clone()),
                (Monomial::new(&[0, 3]), one),
            ],
        )
        .expect("homogeneous"),
    ]
}

/// The nodal-cubic family pulled back along the curve parametrization and
/// generically reduced: a free-base family over P^1 whose common x-factor
/// `u*x0 + v*x2` has been stripped by the honest gcd over k[u, v, x].
pub fn nodal_cubic_pullback_family(field: FieldKind, n: usize) -> ParametricFamily {
    nodal_cubic_family(field, n)
        .compose_params(&nodal_cubic_parametrization(field))
        .expect("parametrization lands on the base")
        .reduce_generic()
        .expect("free base after pullback")
        .family
}

/// Degree-m shear of P^n (n >= 2) with off-term (1/k)*x2^m, over Q:
/// `(x0^m : x0^(m-1)*x1 + (1/k)*x2^m : x0^(m-1)*x2 : x0^(m-1)*x3 : ...)`.
/// As k grows the class approaches the identity fiber (the limit is
/// x0^(m-1) times the identity).
pub fn fiber_approach_shear(m: usize, k: i64, n: usize) -> MapTuple {
    assert!(n >= 2 && m >= 1 && k >= 1);
    let field = FieldKind::Rational;
    let x0 = HomogeneousPoly::variable(field, n + 1, 0).expect("index");
    let x0m1 = x0.pow(m - 1);
    let mut comps = Vec::with_capacity(n + 1);
    comps.push(x0.pow(m));
    let x1 = HomogeneousPoly::variable(field, n + 1, 1).expect("index");
    let x2 = HomogeneousPoly::variable(field, n + 1, 2).expect("index");
    let off = x2.pow(m).scale(&Scalar::from_ratio(field, 1, k).expect("k nonzero"));
    comps.push(x0m1.mul(&x1).expect("ring").add(&off).expect("degree"));
    for i in 2..=n {
        let xi = HomogeneousPoly::variable(field, n + 1, i).expect("index");
        comps.push(x0m1.mul(&xi).expect("ring"));
    }
    MapTuple::new(comps).expect("valid tuple")
}

/// Degree-d tuple of P^n (n >= 2) with scaling parameter m, over Q:
/// `(x0*x2^(d-1) : x1*(x2^(d-1) + (1/m)*x0^(d-1)) : x2^d : x3*x2^(d-1) :
/// ...)`. As m grows the class approaches x2^(d-1) times the identity, a
/// point of the identity fiber.
pub fn fiber_approach_scaled(d: usize, m: i64, n: usize) -> MapTuple {
    assert!(n >= 2 && d >= 2 && m >= 1);
    let field = FieldKind::Rational;
    let x0 = HomogeneousPoly::variable(field, n + 1, 0).expect("index");
    let x2 = HomogeneousPoly::variable(field, n + 1, 2).expect("index");
    let x2d1 = x2.pow(d - 1);
    let scaled = x2d1
        .add(&x0.pow(d - 1).scale(&Scalar::from_ratio(field, 1, m).expect("m nonzero")))
        .expect("degree");
    let mut comps = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let xi = HomogeneousPoly::variable(field, n + 1, i).expect("index");
        comps.push(match i {
            1 => xi.mul(&scaled).expect("ring"),
            2 => x2.pow(d),
            _ => xi.mul(&x2d1).expect("ring"),
        });
    }
    MapTuple::new(comps).expect("valid tuple")
}
