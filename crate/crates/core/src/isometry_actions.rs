//! Proper isometry groups of both planes, the discrete group `R` of the
//! Minkowski plane, and the actions they induce on Killing-tensor and
//! Killing-vector parameters.
//!
//! The point maps are the only hand-written input. Parameter actions are
//! obtained by pushing the general field forward through the affine map and
//! reading the parameters back; the symbolic closed forms used for float
//! evaluation are produced the same way.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_kernel::{int, MultiPoly, Rational, Ring, Var};
use crate::killing_spaces::{
    extract_kt_params, extract_kv_params, extract_tensor_params, extract_vector_params,
    general_killing_tensor, general_killing_vector, symbolic_killing_tensor,
    symbolic_killing_vector, KTParams, KVParams, Space, TensorField, VectorField,
};

/// An invertible affine map `x ↦ M x + shift` with rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: [[Rational; 2]; 2],
    pub shift: [Rational; 2],
}

impl AffineMap {
    fn inverse(&self) -> AffineMap {
        let [[m00, m01], [m10, m11]] = self.matrix.clone();
        let det = &m00 * &m11 - &m01 * &m10;
        assert!(!det.is_zero(), "affine map must be invertible");
        let inv = [[&m11 / &det, -&m01 / &det], [-&m10 / &det, &m00 / &det]];
        let shift = [
            -(&inv[0][0] * &self.shift[0] + &inv[0][1] * &self.shift[1]),
            -(&inv[1][0] * &self.shift[0] + &inv[1][1] * &self.shift[1]),
        ];
        AffineMap { matrix: inv, shift }
    }

    fn as_polys(&self) -> ([[MultiPoly; 2]; 2], [MultiPoly; 2]) {
        (
            self.matrix.clone().map(|row| row.map(MultiPoly::constant)),
            self.shift.clone().map(MultiPoly::constant),
        )
    }
}

/// Pushes a symmetric tensor forward by the constant Jacobian `m`: `m K mᵀ`.
pub fn push_forward_tensor<R: Ring>(m: &[[R; 2]; 2], k: &[R; 3]) -> [R; 3] {
    let [k11, k12, k22] = k.clone();
    let entry = |i: usize, j: usize| {
        let (a, b) = (&m[i], &m[j]);
        a[0].clone() * b[0].clone() * k11.clone()
            + (a[0].clone() * b[1].clone() + a[1].clone() * b[0].clone()) * k12.clone()
            + a[1].clone() * b[1].clone() * k22.clone()
    };
    [entry(0, 0), entry(0, 1), entry(1, 1)]
}

pub fn push_forward_vector<R: Ring>(m: &[[R; 2]; 2], x: &[R; 2]) -> [R; 2] {
    [
        m[0][0].clone() * x[0].clone() + m[0][1].clone() * x[1].clone(),
        m[1][0].clone() * x[0].clone() + m[1][1].clone() * x[1].clone(),
    ]
}

/// Bindings replacing the point symbols by `inverse(point)`, written in the same symbols.
fn pull_back_bindings(space: Space, inverse: &([[MultiPoly; 2]; 2], [MultiPoly; 2])) -> BTreeMap<Var, MultiPoly> {
    let (u, v) = space.point_vars();
    let (pu, pv) = (MultiPoly::var(u), MultiPoly::var(v));
    let (m, shift) = inverse;
    BTreeMap::from([
        (u, &m[0][0] * &pu + &m[0][1] * &pv + shift[0].clone()),
        (v, &m[1][0] * &pu + &m[1][1] * &pv + shift[1].clone()),
    ])
}

/// Image of a tensor field under a point map whose Jacobian is `jac` and
/// whose inverse is `inverse`, both given as polynomials.
fn transform_tensor(
    field: &TensorField,
    jac: &[[MultiPoly; 2]; 2],
    inverse: &([[MultiPoly; 2]; 2], [MultiPoly; 2]),
) -> TensorField {
    let bindings = pull_back_bindings(field.space, inverse);
    let pushed = push_forward_tensor(jac, &field.components);
    TensorField { space: field.space, components: pushed.map(|c| c.subst(&bindings)) }
}

fn transform_vector(
    field: &VectorField,
    jac: &[[MultiPoly; 2]; 2],
    inverse: &([[MultiPoly; 2]; 2], [MultiPoly; 2]),
) -> VectorField {
    let bindings = pull_back_bindings(field.space, inverse);
    let pushed = push_forward_vector(jac, &field.components);
    VectorField { space: field.space, components: pushed.map(|c| c.subst(&bindings)) }
}

/// Parameters of the image of a Killing tensor under an affine map.
pub fn act_affine_kt(map: &AffineMap, p: &KTParams) -> Result<KTParams> {
    let (jac, _) = map.as_polys();
    let image = transform_tensor(&general_killing_tensor(p), &jac, &map.inverse().as_polys());
    extract_kt_params(&image)
}

pub fn act_affine_kv(map: &AffineMap, p: &KVParams) -> Result<KVParams> {
    let (jac, _) = map.as_polys();
    let image = transform_vector(&general_killing_vector(p), &jac, &map.inverse().as_polys());
    extract_kv_params(&image)
}

/// Rotation or boost matrix over any ring.
pub fn rotation_matrix<R: Ring>(space: Space, c: &R, s: &R) -> [[R; 2]; 2] {
    match space {
        Space::Euclidean => [[c.clone(), -s.clone()], [s.clone(), c.clone()]],
        Space::Minkowski => [[c.clone(), s.clone()], [s.clone(), c.clone()]],
    }
}

/// Inverse rotation, valid on the curve `c² ± s² = 1`.
fn inverse_rotation_matrix<R: Ring>(space: Space, c: &R, s: &R) -> [[R; 2]; 2] {
    match space {
        Space::Euclidean => [[c.clone(), s.clone()], [-s.clone(), c.clone()]],
        Space::Minkowski => [[c.clone(), -s.clone()], [-s.clone(), c.clone()]],
    }
}

/// `s²` expressed through `c` on the rotation curve.
pub fn s_squared_rule(space: Space) -> MultiPoly {
    let c2 = MultiPoly::var(Var::C).pow(2);
    match space {
        Space::Euclidean => MultiPoly::one() - c2,
        Space::Minkowski => c2 - MultiPoly::one(),
    }
}

/// `(M x + (a, b))` over any ring.
pub fn point_map<R: Ring>(space: Space, c: &R, s: &R, a: &R, b: &R, pt: &(R, R)) -> (R, R) {
    let m = rotation_matrix(space, c, s);
    let [u, v] = push_forward_vector(&m, &[pt.0.clone(), pt.1.clone()]);
    (u + a.clone(), v + b.clone())
}

fn group_symbols() -> [MultiPoly; 4] {
    [Var::C, Var::S, Var::A, Var::B].map(MultiPoly::var)
}

fn symbolic_inverse(space: Space) -> ([[MultiPoly; 2]; 2], [MultiPoly; 2]) {
    let [c, s, a, b] = group_symbols();
    let inv = inverse_rotation_matrix(space, &c, &s);
    let shift = push_forward_vector(&inv, &[-a, -b]);
    (inv, shift)
}

fn compute_symbolic_kt_action(space: Space) -> [MultiPoly; 6] {
    let [c, s, ..] = group_symbols();
    let jac = rotation_matrix(space, &c, &s);
    let image = transform_tensor(&symbolic_killing_tensor(space), &jac, &symbolic_inverse(space));
    let rule = s_squared_rule(space);
    extract_tensor_params(&image)
        .expect("pushed-forward Killing tensor is Killing")
        .map(|p| p.reduce_square(Var::S, &rule))
}

fn compute_symbolic_kv_action(space: Space) -> [MultiPoly; 3] {
    let [c, s, ..] = group_symbols();
    let jac = rotation_matrix(space, &c, &s);
    let image = transform_vector(&symbolic_killing_vector(space), &jac, &symbolic_inverse(space));
    let rule = s_squared_rule(space);
    extract_vector_params(&image)
        .expect("pushed-forward Killing vector is Killing")
        .map(|p| p.reduce_square(Var::S, &rule))
}

/// The induced action on tensor parameters as polynomials in the parameter
/// symbols and the group symbols `c, s, a, b`, reduced modulo the curve relation.
pub fn symbolic_kt_action(space: Space) -> &'static [MultiPoly; 6] {
    static EUCLIDEAN: OnceLock<[MultiPoly; 6]> = OnceLock::new();
    static MINKOWSKI: OnceLock<[MultiPoly; 6]> = OnceLock::new();
    match space {
        Space::Euclidean => EUCLIDEAN.get_or_init(|| compute_symbolic_kt_action(space)),
        Space::Minkowski => MINKOWSKI.get_or_init(|| compute_symbolic_kt_action(space)),
    }
}

pub fn symbolic_kv_action(space: Space) -> &'static [MultiPoly; 3] {
    static EUCLIDEAN: OnceLock<[MultiPoly; 3]> = OnceLock::new();
    static MINKOWSKI: OnceLock<[MultiPoly; 3]> = OnceLock::new();
    match space {
        Space::Euclidean => EUCLIDEAN.get_or_init(|| compute_symbolic_kv_action(space)),
        Space::Minkowski => MINKOWSKI.get_or_init(|| compute_symbolic_kv_action(space)),
    }
}

/// One element of the proper isometry group: rotation (or boost) followed by a translation.
#[derive(Debug, Clone, PartialEq)]
pub enum IsometryElement {
    /// Exact point on the curve `c² + s² = 1`, or `c² − s² = 1` with `c ≥ 1`.
    Exact { space: Space, c: Rational, s: Rational, a: Rational, b: Rational },
    /// Angle (Euclidean) or rapidity (Minkowski) in floating point.
    Float { space: Space, angle: f64, a: f64, b: f64 },
}

impl IsometryElement {
    pub fn identity(space: Space) -> Self {
        IsometryElement::Exact { space, c: int(1), s: int(0), a: int(0), b: int(0) }
    }

    pub fn exact(space: Space, c: Rational, s: Rational, a: Rational, b: Rational) -> Result<Self> {
        let on_curve = match space {
            Space::Euclidean => &c * &c + &s * &s == int(1),
            Space::Minkowski => &c * &c - &s * &s == int(1) && c >= int(1),
        };
        if !on_curve {
            return Err(Error::Domain(format!("({c}, {s}) is not on the {space} rotation curve")));
        }
        Ok(IsometryElement::Exact { space, c, s, a, b })
    }

    pub fn float(space: Space, angle: f64, a: f64, b: f64) -> Self {
        IsometryElement::Float { space, angle, a, b }
    }

    /// Rational point on the rotation curve from a rational parameter `u`.
    ///
    /// Euclidean: `c = (1−u²)/(1+u²)`, `s = 2u/(1+u²)`, any `u`.
    /// Minkowski: `c = (u+1/u)/2`, `s = (u−1/u)/2`, `u > 0` so that `c ≥ 1`.
    pub fn rotation_from_parameter(space: Space, u: &Rational) -> Result<Self> {
        let one = Rational::one();
        let (c, s) = match space {
            Space::Euclidean => {
                let d = &one + u * u;
                ((&one - u * u) / &d, (u + u) / &d)
            }
            Space::Minkowski => {
                if !u.is_positive() {
                    return Err(Error::Domain(format!(
                        "boost parameter must be positive, got {u}"
                    )));
                }
                let r = u.recip();
                ((u + &r) / int(2), (u - &r) / int(2))
            }
        };
        IsometryElement::exact(space, c, s, int(0), int(0))
    }

    pub fn translation(space: Space, a: Rational, b: Rational) -> Self {
        IsometryElement::Exact { space, c: int(1), s: int(0), a, b }
    }

    /// Replaces the translation part.
    pub fn with_translation(self, a: Rational, b: Rational) -> Self {
        match self {
            IsometryElement::Exact { space, c, s, .. } => IsometryElement::Exact { space, c, s, a, b },
            IsometryElement::Float { space, angle, .. } => IsometryElement::Float {
                space,
                angle,
                a: crate::exact_kernel::rational_to_f64(&a),
                b: crate::exact_kernel::rational_to_f64(&b),
            },
        }
    }

    pub fn space(&self) -> Space {
        match self {
            IsometryElement::Exact { space, .. } | IsometryElement::Float { space, .. } => *space,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, IsometryElement::Exact { .. })
    }

    /// `(c, s, a, b)` in floating point.
    pub fn float_parts(&self) -> (f64, f64, f64, f64) {
        use crate::exact_kernel::rational_to_f64 as f;
        match self {
            IsometryElement::Exact { c, s, a, b, .. } => (f(c), f(s), f(a), f(b)),
            IsometryElement::Float { space, angle, a, b } => match space {
                Space::Euclidean => (angle.cos(), angle.sin(), *a, *b),
                Space::Minkowski => (angle.cosh(), angle.sinh(), *a, *b),
            },
        }
    }

    /// `compose(g1, g2)` acts as `g1 ∘ g2`.
    pub fn compose(&self, other: &IsometryElement) -> Result<Self> {
        if self.space() != other.space() {
            return Err(Error::SpaceMismatch(format!("{} vs {}", self.space(), other.space())));
        }
        match (self, other) {
            (
                IsometryElement::Exact { space, c: c1, s: s1, a: a1, b: b1 },
                IsometryElement::Exact { c: c2, s: s2, a: a2, b: b2, .. },
            ) => {
                let (c, s) = match space {
                    Space::Euclidean => (c1 * c2 - s1 * s2, s1 * c2 + c1 * s2),
                    Space::Minkowski => (c1 * c2 + s1 * s2, s1 * c2 + c1 * s2),
                };
                let (a, b) = point_map(*space, c1, s1, a1, b1, &(a2.clone(), b2.clone()));
                Ok(IsometryElement::Exact { space: *space, c, s, a, b })
            }
            (
                IsometryElement::Float { space, angle: r1, .. },
                IsometryElement::Float { angle: r2, a: a2, b: b2, .. },
            ) => {
                let (a, b) = self.act_point_float((*a2, *b2));
                Ok(IsometryElement::Float { space: *space, angle: r1 + r2, a, b })
            }
            _ => Err(Error::MixedRepresentation),
        }
    }

    /// Closed-form inverse: rotation inverted, translation `−M⁻¹ (a, b)`.
    pub fn inverse(&self) -> Self {
        match self {
            IsometryElement::Exact { space, c, s, a, b } => {
                let inv = inverse_rotation_matrix(*space, c, s);
                let [a, b] = push_forward_vector(&inv, &[-a.clone(), -b.clone()]);
                let s = -s.clone();
                IsometryElement::Exact { space: *space, c: c.clone(), s, a, b }
            }
            IsometryElement::Float { space, angle, .. } => {
                let rotation = IsometryElement::Float { space: *space, angle: -angle, a: 0.0, b: 0.0 };
                let (_, _, a, b) = self.float_parts();
                let (a, b) = rotation.act_point_float((-a, -b));
                IsometryElement::Float { space: *space, angle: -angle, a, b }
            }
        }
    }

    pub fn act_point_exact(&self, pt: &(Rational, Rational)) -> Result<(Rational, Rational)> {
        match self {
            IsometryElement::Exact { space, c, s, a, b } => Ok(point_map(*space, c, s, a, b, pt)),
            IsometryElement::Float { .. } => Err(Error::MixedRepresentation),
        }
    }

    pub fn act_point_float(&self, pt: (f64, f64)) -> (f64, f64) {
        let (c, s, a, b) = self.float_parts();
        point_map(self.space(), &c, &s, &a, &b, &pt)
    }

    fn affine_map(&self) -> Result<AffineMap> {
        match self {
            IsometryElement::Exact { space, c, s, a, b } => Ok(AffineMap {
                matrix: rotation_matrix(*space, c, s),
                shift: [a.clone(), b.clone()],
            }),
            IsometryElement::Float { .. } => Err(Error::MixedRepresentation),
        }
    }

    fn check_space(&self, space: Space) -> Result<()> {
        if self.space() == space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!("element of {} acting on {}", self.space(), space)))
        }
    }

    /// Exact induced action on tensor parameters, by substitution and re-extraction.
    pub fn act_kt_params(&self, p: &KTParams) -> Result<KTParams> {
        self.check_space(p.space)?;
        act_affine_kt(&self.affine_map()?, p)
    }

    pub fn act_kv_params(&self, p: &KVParams) -> Result<KVParams> {
        self.check_space(p.space)?;
        act_affine_kv(&self.affine_map()?, p)
    }

    /// Float action on tensor parameters via the symbolic closed form.
    pub fn act_kt_float(&self, p: &[f64; 6]) -> [f64; 6] {
        let space = self.space();
        let lookup = self.float_lookup(space.param_vars(), p);
        symbolic_kt_action(space).clone().map(|q| q.evaluate(&lookup))
    }

    pub fn act_kv_float(&self, p: &[f64; 3]) -> [f64; 3] {
        let space = self.space();
        let lookup = self.float_lookup(space.kv_vars(), p);
        symbolic_kv_action(space).clone().map(|q| q.evaluate(&lookup))
    }

    fn float_lookup<const N: usize>(&self, vars: [Var; N], p: &[f64; N]) -> impl Fn(Var) -> f64 {
        let (c, s, a, b) = self.float_parts();
        let p = *p;
        move |v| match v {
            Var::C => c,
            Var::S => s,
            Var::A => a,
            Var::B => b,
            other => vars
                .iter()
                .position(|&w| w == other)
                .map(|i| p[i])
                .unwrap_or_else(|| panic!("unexpected symbol {other} in closed form")),
        }
    }
}

/// Generators of the discrete group of the Minkowski plane:
/// `R1: (t, x) ↦ (t, −x)` and `R2: (t, x) ↦ (x, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    R1,
    R2,
}

impl Reflection {
    fn matrix(self) -> [[Rational; 2]; 2] {
        match self {
            Reflection::R1 => [[int(1), int(0)], [int(0), int(-1)]],
            Reflection::R2 => [[int(0), int(1)], [int(1), int(0)]],
        }
    }

    pub fn act_point<R: Ring>(self, pt: &(R, R)) -> (R, R) {
        match self {
            Reflection::R1 => (pt.0.clone(), -pt.1.clone()),
            Reflection::R2 => (pt.1.clone(), pt.0.clone()),
        }
    }
}

/// A word in `R1`, `R2`; letters apply left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiscreteReflection {
    pub word: Vec<Reflection>,
}

impl DiscreteReflection {
    pub fn new(word: Vec<Reflection>) -> Self {
        DiscreteReflection { word }
    }

    pub fn act_point<R: Ring>(&self, pt: &(R, R)) -> (R, R) {
        self.word.iter().fold(pt.clone(), |acc, r| r.act_point(&acc))
    }

    /// The eight distinct group elements, as shortest words.
    pub fn elements() -> Vec<DiscreteReflection> {
        use Reflection::{R1, R2};
        [
            vec![],
            vec![R1],
            vec![R2],
            vec![R1, R2],
            vec![R2, R1],
            vec![R1, R2, R1],
            vec![R2, R1, R2],
            vec![R1, R2, R1, R2],
        ]
        .into_iter()
        .map(DiscreteReflection::new)
        .collect()
    }
}

/// The discrete action is linear in the parameters; applies it to floats
/// through its matrix, read off the exact action on basis vectors.
pub fn discrete_act_float(r: &DiscreteReflection, p: &[f64; 6]) -> [f64; 6] {
    let mut out = [0.0; 6];
    for (j, value) in p.iter().enumerate() {
        let mut basis = [0; 6];
        basis[j] = 1;
        let column = discrete_act_params(r, &KTParams::from_ints(Space::Minkowski, basis))
            .expect("Minkowski parameters");
        for (o, c) in out.iter_mut().zip(&column.values) {
            *o += crate::exact_kernel::rational_to_f64(c) * value;
        }
    }
    out
}

/// Induced action of a word of the discrete group on Minkowski tensor parameters.
pub fn discrete_act_params(r: &DiscreteReflection, p: &KTParams) -> Result<KTParams> {
    if p.space != Space::Minkowski {
        return Err(Error::SpaceMismatch("the discrete group acts on the Minkowski plane".into()));
    }
    r.word.iter().try_fold(p.clone(), |acc, letter| {
        let map = AffineMap { matrix: letter.matrix(), shift: [int(0), int(0)] };
        act_affine_kt(&map, &acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::rat;
    use std::collections::HashSet;

    fn mink(values: [i64; 6]) -> KTParams {
        KTParams::from_ints(Space::Minkowski, values)
    }

    #[test]
    fn rotation_parameter_examples() {
        let id = IsometryElement::rotation_from_parameter(Space::Euclidean, &int(0)).unwrap();
        assert_eq!(id, IsometryElement::identity(Space::Euclidean));
        let quarter = IsometryElement::rotation_from_parameter(Space::Euclidean, &int(1)).unwrap();
        assert_eq!(quarter, IsometryElement::Exact {
            space: Space::Euclidean, c: int(0), s: int(1), a: int(0), b: int(0)
        });
        let boost = IsometryElement::rotation_from_parameter(Space::Minkowski, &int(2)).unwrap();
        assert_eq!(boost, IsometryElement::Exact {
            space: Space::Minkowski, c: rat(5, 4), s: rat(3, 4), a: int(0), b: int(0)
        });
        assert!(IsometryElement::rotation_from_parameter(Space::Minkowski, &int(0)).is_err());
        assert!(IsometryElement::rotation_from_parameter(Space::Minkowski, &int(-2)).is_err());
        assert!(IsometryElement::exact(Space::Euclidean, int(1), int(1), int(0), int(0)).is_err());
    }

    #[test]
    fn point_action_examples() {
        let boost = IsometryElement::rotation_from_parameter(Space::Minkowski, &int(2)).unwrap();
        assert_eq!(boost.act_point_exact(&(int(1), int(0))).unwrap(), (rat(5, 4), rat(3, 4)));
        let quarter = IsometryElement::rotation_from_parameter(Space::Euclidean, &int(1)).unwrap();
        assert_eq!(quarter.act_point_exact(&(int(1), int(0))).unwrap(), (int(0), int(1)));
        let pt = (rat(2, 3), rat(-5, 7));
        assert_eq!(IsometryElement::identity(Space::Minkowski).act_point_exact(&pt).unwrap(), pt);
    }

    #[test]
    fn composition_examples() {
        let quarter = IsometryElement::rotation_from_parameter(Space::Euclidean, &int(1)).unwrap();
        let half = quarter.compose(&quarter).unwrap();
        assert_eq!(half, IsometryElement::Exact {
            space: Space::Euclidean, c: int(-1), s: int(0), a: int(0), b: int(0)
        });
        let b2 = IsometryElement::rotation_from_parameter(Space::Minkowski, &int(2)).unwrap();
        let b3 = IsometryElement::rotation_from_parameter(Space::Minkowski, &int(3)).unwrap();
        let b6 = IsometryElement::rotation_from_parameter(Space::Minkowski, &int(6)).unwrap();
        assert_eq!(b2.compose(&b3).unwrap(), b6);
        let g = b2.with_translation(rat(1, 2), int(-3));
        assert_eq!(g.compose(&IsometryElement::identity(Space::Minkowski)).unwrap(), g);
        assert_eq!(g.compose(&g.inverse()).unwrap(), IsometryElement::identity(Space::Minkowski));
        let f = IsometryElement::float(Space::Minkowski, 0.3, 0.0, 0.0);
        assert_eq!(g.compose(&f), Err(Error::MixedRepresentation));
    }

    #[test]
    fn boost_reproduces_the_alpha3_law() {
        let boost = IsometryElement::rotation_from_parameter(Space::Minkowski, &int(2)).unwrap();
        let (c, s) = (rat(5, 4), rat(3, 4));
        let image = boost.act_kt_params(&mink([1, 2, 3, 0, 0, 0])).unwrap();
        assert_eq!(image.values[2], int(3) * (&c * &c + &s * &s) + int(3) * &c * &s);
    }

    #[test]
    fn translation_shifts_beta4() {
        let g = IsometryElement::translation(Space::Euclidean, int(0), rat(2, 5));
        let image = g.act_kt_params(&KTParams::from_ints(Space::Euclidean, [0, 0, 0, 1, 0, 1])).unwrap();
        assert_eq!(image.values[3], int(1) - rat(2, 5));
    }

    #[test]
    fn killing_vector_action_examples() {
        let quarter = IsometryElement::rotation_from_parameter(Space::Euclidean, &int(1)).unwrap();
        let image = quarter.act_kv_params(&KVParams::from_ints(Space::Euclidean, [1, 0, 0])).unwrap();
        assert_eq!(image, KVParams::from_ints(Space::Euclidean, [0, 1, 0]));
        let g = IsometryElement::rotation_from_parameter(Space::Euclidean, &rat(1, 3))
            .unwrap()
            .with_translation(int(2), rat(-1, 2));
        let image = g.act_kv_params(&KVParams::from_ints(Space::Euclidean, [0, 0, 1])).unwrap();
        assert_eq!(image.values[2], int(1));
    }

    #[test]
    fn float_closed_form_matches_exact_action() {
        for space in Space::ALL {
            let g = IsometryElement::rotation_from_parameter(space, &rat(3, 2))
                .unwrap()
                .with_translation(rat(1, 3), int(-2));
            let p = KTParams::from_ints(space, [1, -2, 3, 5, -7, 11]);
            let exact = g.act_kt_params(&p).unwrap();
            let float = g.act_kt_float(&p.values.clone().map(|v| crate::exact_kernel::rational_to_f64(&v)));
            for (e, f) in exact.values.iter().zip(float) {
                assert!((crate::exact_kernel::rational_to_f64(e) - f).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn discrete_reflection_rows() {
        use Reflection::{R1, R2};
        let k2 = rat(3, 7);
        let ec8 = KTParams::from_array(
            Space::Minkowski,
            [int(0), int(0), -k2.clone(), int(0), int(0), rat(1, 4)],
        );
        let image = discrete_act_params(&DiscreteReflection::new(vec![R1]), &ec8).unwrap();
        assert_eq!(image.values[2], k2);
        let p = mink([1, 2, 3, 4, 5, 6]);
        assert_eq!(discrete_act_params(&DiscreteReflection::new(vec![R2]), &p).unwrap(), mink([2, 1, 3, 5, 4, 6]));
        assert_eq!(discrete_act_params(&DiscreteReflection::new(vec![R1]), &p).unwrap(), mink([1, 2, -3, -4, 5, 6]));
        assert_eq!(discrete_act_params(&DiscreteReflection::new(vec![R2, R2]), &p).unwrap(), p);
    }

    #[test]
    fn discrete_group_has_eight_elements() {
        use Reflection::{R1, R2};
        let p = mink([1, 2, 3, 4, 5, 6]);
        let mut images = HashSet::new();
        let mut words: Vec<Vec<Reflection>> = vec![vec![]];
        for _ in 0..4 {
            let longer: Vec<_> = words
                .iter()
                .flat_map(|w| [R1, R2].map(|r| [w.clone(), vec![r]].concat()))
                .collect();
            words.extend(longer);
        }
        for w in words {
            images.insert(discrete_act_params(&DiscreteReflection::new(w), &p).unwrap());
        }
        assert_eq!(images.len(), 8);
        let listed: HashSet<_> = DiscreteReflection::elements()
            .iter()
            .map(|r| discrete_act_params(r, &p).unwrap())
            .collect();
        assert_eq!(listed, images);
    }
}
