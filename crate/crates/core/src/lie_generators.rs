//! Infinitesimal generators of the induced actions on parameter space.
//!
//! `V_i = π(L_{X_i} K)` is computed by taking the Lie derivative of the
//! general field with symbolic parameters along each Killing vector `X_i`
//! and reading the parameters back. The map `X ↦ π L_X` reverses brackets,
//! so the Σ-generators carry the negated structure constants of the Killing
//! vectors, and the generator of the action itself is `−V_i`. Extended
//! generators are built from the latter: `V′_i = X_i − V_i`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_kernel::{exact_rank, int, MultiPoly, Rational, Var};
use crate::killing_spaces::{
    extract_tensor_params, extract_vector_params, symbolic_killing_tensor, symbolic_killing_vector,
    Space, TensorField, VectorField,
};

/// A vector field `Σ coefficients[k] ∂/∂domain[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearVectorField {
    pub domain: Vec<Var>,
    pub coefficients: Vec<MultiPoly>,
}

impl LinearVectorField {
    pub fn new(domain: Vec<Var>, coefficients: Vec<MultiPoly>) -> Self {
        assert_eq!(domain.len(), coefficients.len(), "one coefficient per domain symbol");
        LinearVectorField { domain, coefficients }
    }

    pub fn zero(domain: Vec<Var>) -> Self {
        let coefficients = vec![MultiPoly::zero(); domain.len()];
        LinearVectorField { domain, coefficients }
    }

    /// Builds a field from `(coefficient, ∂-symbol)` pairs.
    pub fn from_terms(domain: Vec<Var>, terms: &[(MultiPoly, Var)]) -> Self {
        let mut field = LinearVectorField::zero(domain);
        for (coefficient, target) in terms {
            let k = field.index(*target).expect("target symbol in domain");
            field.coefficients[k] = &field.coefficients[k] + coefficient;
        }
        field
    }

    fn index(&self, var: Var) -> Option<usize> {
        self.domain.iter().position(|&v| v == var)
    }

    pub fn coefficient(&self, var: Var) -> MultiPoly {
        self.index(var).map_or_else(MultiPoly::zero, |k| self.coefficients[k].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(MultiPoly::is_zero)
    }

    /// `V(F) = Σ V^k ∂F/∂y^k`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        self.domain
            .iter()
            .zip(&self.coefficients)
            .map(|(&v, c)| c * &f.diff(v))
            .fold(MultiPoly::zero(), |acc, term| acc + term)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let coefficients = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| op(a, b)).collect();
        Ok(LinearVectorField { domain: self.domain.clone(), coefficients })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        LinearVectorField {
            domain: self.domain.clone(),
            coefficients: self.coefficients.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    /// The same field on a larger domain, zero along the new symbols.
    pub fn extend_domain(&self, domain: &[Var]) -> Self {
        let coefficients = domain.iter().map(|&v| self.coefficient(v)).collect();
        LinearVectorField { domain: domain.to_vec(), coefficients }
    }

    /// Values of the coefficients at a point; `None` if a symbol is unbound.
    pub fn value_at(&self, at: &[(Var, Rational)]) -> Option<Vec<Rational>> {
        self.coefficients.iter().map(|c| c.eval_rational(at)).collect()
    }
}

impl fmt::Display for LinearVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .domain
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| {
                if c.num_terms() > 1 {
                    format!("({c}) d/d{v}")
                } else {
                    format!("{c} d/d{v}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Exact Lie bracket `[V, W]^k = V(W^k) − W(V^k)`.
pub fn commutator(v: &LinearVectorField, w: &LinearVectorField) -> Result<LinearVectorField> {
    if v.domain != w.domain {
        return Err(Error::DomainMismatch);
    }
    let coefficients = v
        .coefficients
        .iter()
        .zip(&w.coefficients)
        .map(|(vk, wk)| v.apply(wk) - w.apply(vk))
        .collect();
    Ok(LinearVectorField { domain: v.domain.clone(), coefficients })
}

/// Killing vectors of the plane as polynomial vector fields:
/// Minkowski `(T, X, H)`, Euclidean `(X, Y, R)`.
pub fn killing_vectors(space: Space) -> [VectorField; 3] {
    let (u, v) = space.point_vars();
    let (pu, pv) = (MultiPoly::var(u), MultiPoly::var(v));
    let (zero, one) = (MultiPoly::zero(), MultiPoly::one());
    let third = match space {
        Space::Minkowski => [pv, pu],
        Space::Euclidean => [-pv, pu],
    };
    [[one.clone(), zero.clone()], [zero, one], third].map(|components| VectorField { space, components })
}

pub fn killing_vector_names(space: Space) -> [&'static str; 3] {
    match space {
        Space::Minkowski => ["T", "X", "H"],
        Space::Euclidean => ["X", "Y", "R"],
    }
}

/// The Killing vectors as fields on the point symbols.
pub fn coordinate_generators(space: Space) -> Vec<LinearVectorField> {
    let (u, v) = space.point_vars();
    killing_vectors(space)
        .into_iter()
        .map(|x| LinearVectorField::new(vec![u, v], x.components.to_vec()))
        .collect()
}

fn lie_derivative_tensor(x: &VectorField, k: &TensorField) -> TensorField {
    let (u, v) = k.space.point_vars();
    let vars = [u, v];
    let full = |i: usize, j: usize| -> MultiPoly {
        match (i, j) {
            (0, 0) => k.components[0].clone(),
            (1, 1) => k.components[2].clone(),
            _ => k.components[1].clone(),
        }
    };
    let entry = |i: usize, j: usize| -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, &var) in vars.iter().enumerate() {
            out = out + &x.components[m] * &full(i, j).diff(var)
                - &full(m, j) * &x.components[i].diff(var)
                - &full(i, m) * &x.components[j].diff(var);
        }
        out
    };
    TensorField { space: k.space, components: [entry(0, 0), entry(0, 1), entry(1, 1)] }
}

fn lie_derivative_vector(x: &VectorField, y: &VectorField) -> VectorField {
    let (u, v) = y.space.point_vars();
    let vars = [u, v];
    let entry = |i: usize| -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, &var) in vars.iter().enumerate() {
            out = out + &x.components[m] * &y.components[i].diff(var)
                - &y.components[m] * &x.components[i].diff(var);
        }
        out
    };
    VectorField { space: y.space, components: [entry(0), entry(1)] }
}

/// Parameter symbols of the valence-`valence` space.
pub fn parameter_domain(space: Space, valence: u8) -> Result<Vec<Var>> {
    match valence {
        1 => Ok(space.kv_vars().to_vec()),
        2 => Ok(space.param_vars().to_vec()),
        other => Err(Error::Domain(format!("valence must be 1 or 2, got {other}"))),
    }
}

/// `V_i = π L_{X_i} K` for each Killing vector `X_i`.
pub fn sigma_generators(space: Space, valence: u8) -> Result<Vec<LinearVectorField>> {
    let domain = parameter_domain(space, valence)?;
    killing_vectors(space)
        .iter()
        .map(|x| {
            let coefficients = match valence {
                1 => extract_vector_params(&lie_derivative_vector(x, &symbolic_killing_vector(space)))?.to_vec(),
                _ => extract_tensor_params(&lie_derivative_tensor(x, &symbolic_killing_tensor(space)))?.to_vec(),
            };
            Ok(LinearVectorField::new(domain.clone(), coefficients))
        })
        .collect()
}

/// `V′_i = X_i − V_i` on parameters plus point symbols: the infinitesimal
/// generators of the simultaneous action on parameters and points.
pub fn extended_generators(space: Space) -> Result<Vec<LinearVectorField>> {
    let (u, v) = space.point_vars();
    let mut domain = space.param_vars().to_vec();
    domain.extend([u, v]);
    sigma_generators(space, 2)?
        .iter()
        .zip(coordinate_generators(space))
        .map(|(sigma, x)| x.extend_domain(&domain).sub(&sigma.extend_domain(&domain)))
        .collect()
}

/// Block sums `Σ_ℓ V^ℓ_i` over the product of the requested parameter spaces.
///
/// Valence-1 and valence-2 Minkowski parameters share symbols, so that
/// product is only available in the Euclidean plane.
pub fn joint_generators(space: Space, valences: &[u8]) -> Result<Vec<LinearVectorField>> {
    let mut sorted = valences.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(Error::Domain("no valences given".into()));
    }
    if space == Space::Minkowski && sorted.len() > 1 {
        return Err(Error::Domain("joint Minkowski parameters would share symbols".into()));
    }
    let mut domain = Vec::new();
    for &valence in &sorted {
        domain.extend(parameter_domain(space, valence)?);
    }
    let mut sums: Vec<LinearVectorField> = vec![LinearVectorField::zero(domain.clone()); 3];
    for &valence in &sorted {
        for (sum, field) in sums.iter_mut().zip(sigma_generators(space, valence)?) {
            *sum = sum.add(&field.extend_domain(&domain))?;
        }
    }
    Ok(sums)
}

/// `c[i][j][k]` with `[V_i, V_j] = Σ_k c[i][j][k] V_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    pub c: Vec<Vec<Vec<Rational>>>,
}

impl StructureConstants {
    /// Constants of the Killing vectors: Minkowski `[T,X] = 0, [T,H] = X, [X,H] = T`;
    /// Euclidean `[X,Y] = 0, [X,R] = Y, [Y,R] = −X`.
    pub fn killing_algebra(space: Space) -> Self {
        let mut c = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, value: i64| {
            c[i][j][k] = int(value);
            c[j][i][k] = int(-value);
        };
        match space {
            Space::Minkowski => {
                set(0, 2, 1, 1);
                set(1, 2, 0, 1);
            }
            Space::Euclidean => {
                set(0, 2, 1, 1);
                set(1, 2, 0, -1);
            }
        }
        StructureConstants { c }
    }

    pub fn negated(&self) -> Self {
        StructureConstants {
            c: self.c.iter().map(|m| m.iter().map(|r| r.iter().map(|v| -v).collect()).collect()).collect(),
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.c.len();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.c[i][j][k] == -self.c[j][i][k].clone())))
    }

    /// `Σ_m (c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj) = 0` for all indices.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.c.len();
        let c = &self.c;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let total: Rational = (0..n)
                            .map(|m| &c[i][j][m] * &c[m][k][l] + &c[j][k][m] * &c[m][i][l] + &c[k][i][m] * &c[m][j][l])
                            .sum();
                        if !total.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Outcome for one ordered pair `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCheck {
    pub i: usize,
    pub j: usize,
    /// `[V_i, V_j] − Σ_k c^k_ij V_k`; zero on success.
    pub residual: LinearVectorField,
}

impl BracketCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub checks: Vec<BracketCheck>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(BracketCheck::passed)
    }
}

pub fn verify_structure_constants(
    fields: &[LinearVectorField],
    expected: &StructureConstants,
) -> Result<StructureReport> {
    let mut checks = Vec::new();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let mut residual = commutator(&fields[i], &fields[j])?;
            for (k, field) in fields.iter().enumerate() {
                residual = residual.sub(&field.scale(&expected.c[i][j][k]))?;
            }
            checks.push(BracketCheck { i, j, residual });
        }
    }
    Ok(StructureReport { checks })
}

/// `[[V_i,V_j],V_k] + [[V_j,V_k],V_i] + [[V_k,V_i],V_j]` for every triple; all zero when Jacobi holds.
pub fn jacobi_residuals(fields: &[LinearVectorField]) -> Result<Vec<LinearVectorField>> {
    let n = fields.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&fields[i], &fields[j], &fields[k]);
                let total = commutator(&commutator(a, b)?, c)?
                    .add(&commutator(&commutator(b, c)?, a)?)?
                    .add(&commutator(&commutator(c, a)?, b)?)?;
                out.push(total);
            }
        }
    }
    Ok(out)
}

/// Exact rank of the matrix of field values at a rational point.
pub fn orbit_dimension(fields: &[LinearVectorField], at: &[(Var, Rational)]) -> Result<usize> {
    let rows: Option<Vec<Vec<Rational>>> = fields.iter().map(|f| f.value_at(at)).collect();
    let rows = rows.ok_or_else(|| Error::Domain("point does not bind every domain symbol".into()))?;
    Ok(exact_rank(&rows))
}

/// `V(F)`; zero certifies that `F` is annihilated.
pub fn annihilation_check(v: &LinearVectorField, f: &MultiPoly) -> MultiPoly {
    v.apply(f)
}

/// Exact rank of the Jacobian of `functions` with respect to `vars` at a point.
pub fn jacobian_rank(functions: &[MultiPoly], vars: &[Var], at: &[(Var, Rational)]) -> Result<usize> {
    let rows: Option<Vec<Vec<Rational>>> = functions
        .iter()
        .map(|f| vars.iter().map(|&v| f.diff(v).eval_rational(at)).collect())
        .collect();
    let rows = rows.ok_or_else(|| Error::Domain("point does not bind every symbol".into()))?;
    Ok(exact_rank(&rows))
}

/// How a derived field relates to a tabulated one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorMatch {
    Exact,
    /// The tabulated field is the negative of the derived one.
    Negated,
    /// Neither; carries `tabulated − derived`.
    Differs(LinearVectorField),
}

impl GeneratorMatch {
    pub fn compare(derived: &LinearVectorField, tabulated: &LinearVectorField) -> Result<Self> {
        let diff = tabulated.sub(derived)?;
        if diff.is_zero() {
            Ok(GeneratorMatch::Exact)
        } else if tabulated.add(derived)?.is_zero() {
            Ok(GeneratorMatch::Negated)
        } else {
            Ok(GeneratorMatch::Differs(diff))
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            GeneratorMatch::Exact => "exact",
            GeneratorMatch::Negated => "negated",
            GeneratorMatch::Differs(_) => "differs",
        }
    }
}
