//! The Euclidean and Minkowski planes, their metrics, the general Killing
//! vectors and valence-2 Killing tensors, and the checks that certify them.

use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_kernel::{int, rat, MultiPoly, Rational, Ring, Var};

/// One of the two flat planes. Point symbols are `(x, y)` or `(t, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Euclidean,
    Minkowski,
}

impl Space {
    pub const ALL: [Space; 2] = [Space::Euclidean, Space::Minkowski];

    pub fn name(self) -> &'static str {
        match self {
            Space::Euclidean => "euclidean",
            Space::Minkowski => "minkowski",
        }
    }

    /// Diagonal of the metric; the inverse metric has the same entries.
    pub fn metric_diag(self) -> [Rational; 2] {
        match self {
            Space::Euclidean => [int(1), int(1)],
            Space::Minkowski => [int(1), int(-1)],
        }
    }

    pub fn point_vars(self) -> (Var, Var) {
        match self {
            Space::Euclidean => (Var::X, Var::Y),
            Space::Minkowski => (Var::T, Var::X),
        }
    }

    /// Symbols for the six tensor parameters.
    pub fn param_vars(self) -> [Var; 6] {
        let make: fn(u8) -> Var = match self {
            Space::Euclidean => Var::beta,
            Space::Minkowski => Var::alpha,
        };
        [make(1), make(2), make(3), make(4), make(5), make(6)]
    }

    /// Symbols for the three Killing-vector parameters.
    pub fn kv_vars(self) -> [Var; 3] {
        [Var::alpha(1), Var::alpha(2), Var::alpha(3)]
    }

    /// Symbols for the five nontrivial parameters.
    pub fn nontrivial_vars(self) -> [Var; 5] {
        let p = self.param_vars();
        let first = match self {
            Space::Euclidean => Var::BetaPrime1,
            Space::Minkowski => Var::AlphaPrime1,
        };
        [first, p[2], p[3], p[4], p[5]]
    }

    /// Parameters of the contravariant metric itself.
    pub fn metric_params(self) -> KTParams {
        let [g1, g2] = self.metric_diag();
        KTParams::from_array(self, [g1, g2, int(0), int(0), int(0), int(0)])
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "euclidean" | "e" => Ok(Space::Euclidean),
            "minkowski" | "m" => Ok(Space::Minkowski),
            other => Err(Error::Domain(format!("unknown space {other:?}"))),
        }
    }
}

fn to_array<const N: usize>(values: Vec<Rational>) -> Result<[Rational; N]> {
    let got = values.len();
    values
        .try_into()
        .map_err(|_| Error::Arity { expected: N, got })
}

/// The six parameters of a valence-2 Killing tensor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KTParams {
    pub space: Space,
    pub values: [Rational; 6],
}

impl KTParams {
    pub fn new(space: Space, values: Vec<Rational>) -> Result<Self> {
        Ok(KTParams { space, values: to_array(values)? })
    }

    pub fn from_array(space: Space, values: [Rational; 6]) -> Self {
        KTParams { space, values }
    }

    pub fn from_ints(space: Space, values: [i64; 6]) -> Self {
        KTParams { space, values: values.map(int) }
    }

    pub fn zero(space: Space) -> Self {
        KTParams::from_ints(space, [0; 6])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        KTParams { space: self.space, values: self.values.clone().map(|v| v * factor) }
    }

    pub fn add(&self, other: &KTParams) -> Self {
        let mut values = self.values.clone();
        for (v, w) in values.iter_mut().zip(&other.values) {
            *v += w;
        }
        KTParams { space: self.space, values }
    }

    /// `(symbol, value)` pairs for substitution.
    pub fn bindings(&self) -> Vec<(Var, Rational)> {
        self.space.param_vars().into_iter().zip(self.values.iter().cloned()).collect()
    }
}

/// The three parameters of a Killing vector: `(α1, α2, α3)` in the Euclidean
/// plane, coefficients on `(T, X, H)` in the Minkowski plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KVParams {
    pub space: Space,
    pub values: [Rational; 3],
}

impl KVParams {
    pub fn new(space: Space, values: Vec<Rational>) -> Result<Self> {
        Ok(KVParams { space, values: to_array(values)? })
    }

    pub fn from_ints(space: Space, values: [i64; 3]) -> Self {
        KVParams { space, values: values.map(int) }
    }

    pub fn bindings(&self) -> Vec<(Var, Rational)> {
        self.space.kv_vars().into_iter().zip(self.values.iter().cloned()).collect()
    }
}

/// The five parameters of a tensor with its trace slot removed:
/// `(α′1, α3, α4, α5, α6)` or `(β′1, β3, β4, β5, β6)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NontrivialKT {
    pub space: Space,
    pub values: [Rational; 5],
}

impl NontrivialKT {
    pub fn new(space: Space, values: Vec<Rational>) -> Result<Self> {
        Ok(NontrivialKT { space, values: to_array(values)? })
    }

    pub fn from_array(space: Space, values: [Rational; 5]) -> Self {
        NontrivialKT { space, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Sets the second parameter to zero and keeps the rest.
pub fn embed_nontrivial(nt: &NontrivialKT) -> KTParams {
    let [p1, p3, p4, p5, p6] = nt.values.clone();
    KTParams::from_array(nt.space, [p1, int(0), p3, p4, p5, p6])
}

/// Symmetric contravariant 2-tensor field: components `[uu, uv, vv]` in the
/// point symbols `(u, v)` of the space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorField {
    pub space: Space,
    pub components: [MultiPoly; 3],
}

/// Contravariant vector field `[u, v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pub space: Space,
    pub components: [MultiPoly; 2],
}

/// The general Killing tensor over any ring, at a point `(u, v)`.
pub fn general_tensor_components<R: Ring>(space: Space, p: &[R; 6], u: &R, v: &R) -> [R; 3] {
    let two = R::from_i64(2);
    let [p1, p2, p3, p4, p5, p6] = p.clone();
    match space {
        Space::Minkowski => {
            let (t, x) = (u.clone(), v.clone());
            [
                p1 + two.clone() * p4.clone() * x.clone() + p6.clone() * x.clone() * x.clone(),
                p3 + p4 * t.clone() + p5.clone() * x.clone() + p6.clone() * t.clone() * x,
                p2 + two * p5 * t.clone() + p6 * t.clone() * t,
            ]
        }
        Space::Euclidean => {
            let (x, y) = (u.clone(), v.clone());
            [
                p1 + two.clone() * p4.clone() * y.clone() + p6.clone() * y.clone() * y.clone(),
                p3 - p4 * x.clone() - p5.clone() * y.clone() - p6.clone() * x.clone() * y,
                p2 + two * p5 * x.clone() + p6 * x.clone() * x,
            ]
        }
    }
}

/// The general Killing vector over any ring, at a point `(u, v)`.
pub fn general_vector_components<R: Ring>(space: Space, p: &[R; 3], u: &R, v: &R) -> [R; 2] {
    let [p1, p2, p3] = p.clone();
    match space {
        Space::Minkowski => [p1 + p3.clone() * v.clone(), p2 + p3 * u.clone()],
        Space::Euclidean => [p1 + p3.clone() * v.clone(), p2 - p3 * u.clone()],
    }
}

fn point_polys(space: Space) -> (MultiPoly, MultiPoly) {
    let (u, v) = space.point_vars();
    (MultiPoly::var(u), MultiPoly::var(v))
}

/// General tensor with polynomial parameters (symbols, constants or mixtures).
pub fn tensor_from_param_polys(space: Space, params: &[MultiPoly; 6]) -> TensorField {
    let (u, v) = point_polys(space);
    TensorField { space, components: general_tensor_components(space, params, &u, &v) }
}

pub fn vector_from_param_polys(space: Space, params: &[MultiPoly; 3]) -> VectorField {
    let (u, v) = point_polys(space);
    VectorField { space, components: general_vector_components(space, params, &u, &v) }
}

/// Parameter symbols as polynomials.
pub fn symbolic_params(space: Space) -> [MultiPoly; 6] {
    space.param_vars().map(MultiPoly::var)
}

pub fn symbolic_kv_params(space: Space) -> [MultiPoly; 3] {
    space.kv_vars().map(MultiPoly::var)
}

pub fn general_killing_tensor(params: &KTParams) -> TensorField {
    tensor_from_param_polys(params.space, &params.values.clone().map(MultiPoly::constant))
}

pub fn general_killing_vector(params: &KVParams) -> VectorField {
    vector_from_param_polys(params.space, &params.values.clone().map(MultiPoly::constant))
}

/// The general tensor with symbolic parameters.
pub fn symbolic_killing_tensor(space: Space) -> TensorField {
    tensor_from_param_polys(space, &symbolic_params(space))
}

pub fn symbolic_killing_vector(space: Space) -> VectorField {
    vector_from_param_polys(space, &symbolic_kv_params(space))
}

/// Reads the six parameter coefficients back out of a tensor field whose
/// components may carry other symbols, and checks nothing is left over.
pub fn extract_tensor_params(field: &TensorField) -> Result<[MultiPoly; 6]> {
    let space = field.space;
    let (u, v) = space.point_vars();
    let vars = [u, v];
    let [uu, uv, vv] = &field.components;
    let half = MultiPoly::constant(rat(1, 2));
    let c = |p: &MultiPoly, i: u32, j: u32| p.coefficient(&vars, &[i, j]);
    let params = match space {
        Space::Minkowski => [
            c(uu, 0, 0),
            c(vv, 0, 0),
            c(uv, 0, 0),
            &c(uu, 0, 1) * &half,
            c(uv, 0, 1),
            c(uu, 0, 2),
        ],
        Space::Euclidean => [
            c(uu, 0, 0),
            c(vv, 0, 0),
            c(uv, 0, 0),
            &c(uu, 0, 1) * &half,
            -c(uv, 0, 1),
            c(uu, 0, 2),
        ],
    };
    let rebuilt = tensor_from_param_polys(space, &params);
    for (got, want) in field.components.iter().zip(&rebuilt.components) {
        let residue = got - want;
        if !residue.is_zero() {
            return Err(Error::ExtractionResidue(residue.to_string()));
        }
    }
    Ok(params)
}

pub fn extract_vector_params(field: &VectorField) -> Result<[MultiPoly; 3]> {
    let space = field.space;
    let (u, v) = space.point_vars();
    let vars = [u, v];
    let [cu, cv] = &field.components;
    let params = [
        cu.coefficient(&vars, &[0, 0]),
        cv.coefficient(&vars, &[0, 0]),
        cu.coefficient(&vars, &[0, 1]),
    ];
    let rebuilt = vector_from_param_polys(space, &params);
    for (got, want) in field.components.iter().zip(&rebuilt.components) {
        let residue = got - want;
        if !residue.is_zero() {
            return Err(Error::ExtractionResidue(residue.to_string()));
        }
    }
    Ok(params)
}

fn constant_params<const N: usize>(polys: [MultiPoly; N]) -> Result<[Rational; N]> {
    let mut out = Vec::with_capacity(N);
    for p in polys {
        out.push(p.as_constant().ok_or_else(|| Error::ExtractionResidue(p.to_string()))?);
    }
    to_array(out)
}

pub fn extract_kt_params(field: &TensorField) -> Result<KTParams> {
    Ok(KTParams::from_array(field.space, constant_params(extract_tensor_params(field)?)?))
}

pub fn extract_kv_params(field: &VectorField) -> Result<KVParams> {
    Ok(KVParams { space: field.space, values: constant_params(extract_vector_params(field)?)? })
}

/// Dimension of the space of valence-`p` Killing tensors on an
/// `n`-dimensional space of constant curvature.
pub fn dtt_dimension(n: u64, p: u64) -> Result<u64> {
    if n == 0 || p == 0 {
        return Err(Error::Domain("dimension and valence must be positive".into()));
    }
    let product = binomial(n + p, p + 1) as u128 * binomial(n + p - 1, p) as u128;
    Ok((product / n as u128) as u64)
}

/// Covariant components `K_ij = g_ii g_jj K^ij`.
fn lower(field: &TensorField) -> [MultiPoly; 3] {
    let [g1, g2] = field.space.metric_diag();
    let [uu, uv, vv] = &field.components;
    [uu.scale(&(&g1 * &g1)), uv.scale(&(&g1 * &g2)), vv.scale(&(&g2 * &g2))]
}

/// Independent components `(111, 112, 122, 222)` of the symmetrized gradient
/// of the covariant tensor. All vanish iff the field is a Killing tensor.
pub fn killing_residual(field: &TensorField) -> [MultiPoly; 4] {
    let (u, v) = field.space.point_vars();
    let [k11, k12, k22] = lower(field);
    let two = MultiPoly::int(2);
    let three = MultiPoly::int(3);
    [
        &three * &k11.diff(u),
        &two * &k12.diff(u) + k11.diff(v),
        &two * &k12.diff(v) + k22.diff(u),
        &three * &k22.diff(v),
    ]
}

/// Independent components `(11, 12, 22)` of the symmetrized gradient of the
/// covariant vector. All vanish iff the field is a Killing vector.
pub fn killing_vector_residual(field: &VectorField) -> [MultiPoly; 3] {
    let (u, v) = field.space.point_vars();
    let [g1, g2] = field.space.metric_diag();
    let x1 = field.components[0].scale(&g1);
    let x2 = field.components[1].scale(&g2);
    let two = MultiPoly::int(2);
    [&two * &x1.diff(u), x1.diff(v) + x2.diff(u), &two * &x2.diff(v)]
}

/// Canonical Poisson bracket in positions `(q1, q2)` and momenta `(p1, p2)`.
fn poisson_bracket(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    [(Var::Q1, Var::P1), (Var::Q2, Var::P2)]
        .into_iter()
        .map(|(q, p)| &f.diff(q) * &g.diff(p) - &f.diff(p) * &g.diff(q))
        .fold(MultiPoly::zero(), |acc, term| acc + term)
}

fn to_phase_space(space: Space, p: &MultiPoly) -> MultiPoly {
    let (u, v) = space.point_vars();
    p.subst(&[(u, MultiPoly::var(Var::Q1)), (v, MultiPoly::var(Var::Q2))].into_iter().collect())
}

fn geodesic_hamiltonian(space: Space) -> MultiPoly {
    let [g1, g2] = space.metric_diag();
    MultiPoly::var(Var::P1).pow(2).scale(&g1) + MultiPoly::var(Var::P2).pow(2).scale(&g2)
}

/// `{g^ij p_i p_j, K^kl p_k p_l}`; zero iff the quadratic function is a first integral.
pub fn geodesic_poisson_check(field: &TensorField) -> MultiPoly {
    let space = field.space;
    let (p1, p2) = (MultiPoly::var(Var::P1), MultiPoly::var(Var::P2));
    let [uu, uv, vv] = field.components.clone().map(|c| to_phase_space(space, &c));
    let integral = uu * p1.pow(2) + uv * &p1 * &p2 * MultiPoly::int(2) + vv * p2.pow(2);
    poisson_bracket(&geodesic_hamiltonian(space), &integral)
}

/// `{g^ij p_i p_j, X^k p_k}` for a vector field.
pub fn geodesic_poisson_check_vector(field: &VectorField) -> MultiPoly {
    let space = field.space;
    let [cu, cv] = field.components.clone().map(|c| to_phase_space(space, &c));
    let integral = cu * MultiPoly::var(Var::P1) + cv * MultiPoly::var(Var::P2);
    poisson_bracket(&geodesic_hamiltonian(space), &integral)
}

/// `(tr K̂)² − 4 det K̂` with `K̂ = K g⁻¹`, evaluated over any ring.
pub fn discriminant_of<R: Ring>(space: Space, components: &[R; 3]) -> R {
    let [uu, uv, vv] = components.clone();
    let four = R::from_i64(4);
    match space {
        Space::Euclidean => (uu - vv).square() + four * uv.square(),
        Space::Minkowski => (uu + vv).square() - four * uv.square(),
    }
}

/// Discriminant of the characteristic polynomial of `K̂`, as a polynomial in the point.
pub fn eigen_discriminant(params: &KTParams) -> MultiPoly {
    let field = general_killing_tensor(params);
    discriminant_of(params.space, &field.components)
}

/// Whether `K̂` has real distinct eigenvalues somewhere near the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenPrecondition {
    /// Some grid point has a positive discriminant.
    Satisfied,
    /// The discriminant vanishes identically.
    Degenerate,
    /// No grid point has a positive discriminant.
    Complex,
}

impl EigenPrecondition {
    pub fn tag(self) -> &'static str {
        match self {
            EigenPrecondition::Satisfied => "satisfied",
            EigenPrecondition::Degenerate => "degenerate",
            EigenPrecondition::Complex => "complex",
        }
    }
}

/// Samples the discriminant on the 9×9 grid of step 1/2 over `[−2, 2]²`.
pub fn eigen_precondition(params: &KTParams) -> EigenPrecondition {
    let disc = eigen_discriminant(params);
    if disc.is_zero() {
        return EigenPrecondition::Degenerate;
    }
    let (u, v) = params.space.point_vars();
    let grid: Vec<Rational> = (-4..=4).map(|i| rat(i, 2)).collect();
    let positive = grid.iter().any(|a| {
        grid.iter().any(|b| {
            disc.eval_rational(&[(u, a.clone()), (v, b.clone())])
                .is_some_and(|value| value.is_positive())
        })
    });
    if positive {
        EigenPrecondition::Satisfied
    } else {
        EigenPrecondition::Complex
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::integers;

    #[test]
    fn dtt_values() {
        assert_eq!(dtt_dimension(2, 1).unwrap(), 3);
        assert_eq!(dtt_dimension(2, 2).unwrap(), 6);
        assert_eq!(dtt_dimension(3, 2).unwrap(), 20);
        assert_eq!(dtt_dimension(3, 1).unwrap(), 6);
        assert!(dtt_dimension(0, 2).is_err());
        assert!(dtt_dimension(2, 0).is_err());
    }

    #[test]
    fn minkowski_ec2_components() {
        let field = general_killing_tensor(&KTParams::from_ints(Space::Minkowski, [0, 0, 0, 0, 0, 1]));
        let (t, x) = (MultiPoly::var(Var::T), MultiPoly::var(Var::X));
        assert_eq!(field.components, [x.pow(2), &t * &x, t.pow(2)]);
    }

    #[test]
    fn euclidean_cartesian_components() {
        let field = general_killing_tensor(&KTParams::from_ints(Space::Euclidean, [1, 0, 0, 0, 0, 0]));
        assert_eq!(field.components, [MultiPoly::one(), MultiPoly::zero(), MultiPoly::zero()]);
        let zero = general_killing_tensor(&KTParams::zero(Space::Euclidean));
        assert!(zero.components.iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn symbolic_general_forms_are_killing() {
        for space in Space::ALL {
            let kt = symbolic_killing_tensor(space);
            assert!(killing_residual(&kt).iter().all(MultiPoly::is_zero));
            assert!(geodesic_poisson_check(&kt).is_zero());
            let kv = symbolic_killing_vector(space);
            assert!(killing_vector_residual(&kv).iter().all(MultiPoly::is_zero));
            assert!(geodesic_poisson_check_vector(&kv).is_zero());
        }
    }

    #[test]
    fn metric_is_killing() {
        for space in Space::ALL {
            let g = general_killing_tensor(&space.metric_params());
            assert!(killing_residual(&g).iter().all(MultiPoly::is_zero));
        }
    }

    #[test]
    fn non_killing_fields_are_detected() {
        let t = MultiPoly::var(Var::T);
        let field = TensorField {
            space: Space::Minkowski,
            components: [t, MultiPoly::zero(), MultiPoly::zero()],
        };
        assert!(!killing_residual(&field)[0].is_zero());

        let mut cubic = symbolic_killing_tensor(Space::Minkowski);
        cubic.components[0] = &cubic.components[0] + &MultiPoly::var(Var::X).pow(3);
        let bracket = geodesic_poisson_check(&cubic);
        assert!(!bracket.is_zero());
        assert_eq!(bracket.degree_in(&[Var::P1, Var::P2]), 3);
    }

    #[test]
    fn extraction_inverts_the_general_form() {
        for space in Space::ALL {
            let p = KTParams::from_ints(space, [1, -2, 3, 5, -7, 11]);
            assert_eq!(extract_kt_params(&general_killing_tensor(&p)).unwrap(), p);
            let kv = KVParams::from_ints(space, [2, -3, 5]);
            assert_eq!(extract_kv_params(&general_killing_vector(&kv)).unwrap(), kv);
        }
        let bad = TensorField {
            space: Space::Euclidean,
            components: [MultiPoly::var(Var::X), MultiPoly::zero(), MultiPoly::zero()],
        };
        assert!(matches!(extract_kt_params(&bad), Err(Error::ExtractionResidue(_))));
    }

    #[test]
    fn discriminant_examples() {
        let polar = eigen_discriminant(&KTParams::from_ints(Space::Euclidean, [0, 0, 0, 0, 0, 1]));
        let (x, y) = (MultiPoly::var(Var::X), MultiPoly::var(Var::Y));
        assert_eq!(polar, (x.pow(2) + y.pow(2)).pow(2));
        for space in Space::ALL {
            assert!(eigen_discriminant(&space.metric_params().scale(&int(3))).is_zero());
            assert_eq!(eigen_precondition(&space.metric_params()), EigenPrecondition::Degenerate);
        }
        let ec2 = KTParams::from_ints(Space::Minkowski, [0, 0, 0, 0, 0, 1]);
        let (t, x) = (MultiPoly::var(Var::T), MultiPoly::var(Var::X));
        let disc = eigen_discriminant(&ec2);
        assert_eq!(disc, (t.pow(2) - x.pow(2)).pow(2));
        // Grid cross-check against trace and determinant of K̂.
        let field = general_killing_tensor(&ec2);
        for i in -3..=3 {
            for j in -3..=3 {
                let at = [(Var::T, rat(i, 2)), (Var::X, rat(j, 3))];
                let [k11, k12, k22] = field.components.clone().map(|c| c.eval_rational(&at).unwrap());
                let trace = &k11 - &k22;
                let det = -(&k11 * &k22 - &k12 * &k12);
                assert_eq!(disc.eval_rational(&at).unwrap(), &trace * &trace - int(4) * det);
            }
        }
        assert_eq!(eigen_precondition(&ec2), EigenPrecondition::Satisfied);
    }

    #[test]
    fn euclidean_discriminant_ignores_metric_shift() {
        let p = KTParams::new(Space::Euclidean, integers(&[2, -1, 3, 1, 4, -2])).unwrap();
        let shifted = p.add(&Space::Euclidean.metric_params().scale(&rat(-5, 3)));
        assert_eq!(eigen_discriminant(&p), eigen_discriminant(&shifted));
    }

    #[test]
    fn embedding_examples() {
        let k2 = int(3);
        let nt = NontrivialKT::from_array(
            Space::Minkowski,
            [int(2) * &k2, int(0), int(0), int(0), rat(-1, 4)],
        );
        assert_eq!(embed_nontrivial(&nt).values, [int(6), int(0), int(0), int(0), int(0), rat(-1, 4)]);
        let nt = NontrivialKT::new(Space::Euclidean, integers(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(embed_nontrivial(&nt), KTParams::from_ints(Space::Euclidean, [1, 0, 0, 0, 0, 1]));
        assert!(embed_nontrivial(&NontrivialKT::new(Space::Euclidean, integers(&[0; 5])).unwrap()).is_zero());
    }

    #[test]
    fn arity_and_space_parsing() {
        assert_eq!(
            KTParams::new(Space::Euclidean, integers(&[0, 0, 0])),
            Err(Error::Arity { expected: 6, got: 3 })
        );
        assert_eq!("Minkowski".parse::<Space>().unwrap(), Space::Minkowski);
        assert!("sphere".parse::<Space>().is_err());
    }
}
