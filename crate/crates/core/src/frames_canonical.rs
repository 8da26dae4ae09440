//! Moving frames by Cartan normalization, coordinate cross-sections,
//! canonical forms of the equivalence classes, and the split of a Killing
//! tensor into a multiple of the metric plus a nontrivial part.
//!
//! Frames are computed in floating point only. Exact classification never
//! goes through a frame.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_kernel::{int, rat, rational_to_f64, MultiPoly, Rational, Var};
use crate::invariant_engine::{invariants_of, symbolic_invariants};
use crate::isometry_actions::{discrete_act_float, DiscreteReflection, IsometryElement, Reflection};
use crate::killing_spaces::{embed_nontrivial, KTParams, NontrivialKT, Space};
use crate::lie_generators::jacobian_rank;

/// Absolute tolerance on the constrained parameters after normalization.
pub const FRAME_TOLERANCE: f64 = 1e-9;

/// A coordinate cross-section of the nontrivial parameter space: each
/// constraint fixes one of `(p′1, p3, p4, p5, p6)` (by index `0..5`).
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection {
    pub space: Space,
    pub constraints: Vec<(usize, Rational)>,
}

impl CrossSection {
    pub fn new(space: Space, constraints: Vec<(usize, Rational)>) -> Self {
        CrossSection { space, constraints }
    }

    /// Constraints setting the listed indices to zero.
    pub fn zeros(space: Space, indices: &[usize]) -> Self {
        CrossSection::new(space, indices.iter().map(|&i| (i, int(0))).collect())
    }

    /// The Euclidean sections `K1 … K4`.
    pub fn euclidean_standard(n: usize) -> Option<Self> {
        let indices: &[usize] = match n {
            1 => &[1, 2, 3],
            2 => &[0, 2, 3],
            3 => &[0, 1, 2],
            4 => &[0, 1, 3],
            _ => return None,
        };
        Some(CrossSection::zeros(Space::Euclidean, indices))
    }
}

impl fmt::Display for CrossSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.space.nontrivial_vars();
        let parts: Vec<String> = self
            .constraints
            .iter()
            .map(|(i, value)| match vars.get(*i) {
                Some(v) => format!("{v} = {value}"),
                None => format!("#{i} = {value}"),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The fundamental invariants restricted to the nontrivial parameters
/// (`p1 = p′1`, `p2 = 0`).
pub fn nontrivial_invariants(space: Space) -> [MultiPoly; 3] {
    let [p1, p2, ..] = space.param_vars();
    let prime = match space {
        Space::Euclidean => Var::BetaPrime1,
        Space::Minkowski => Var::AlphaPrime1,
    };
    let bindings = [(p1, MultiPoly::var(prime)), (p2, MultiPoly::zero())].into_iter().collect();
    symbolic_invariants(space).map(|i| i.subst(&bindings))
}

/// Sample points used as "generic": a few fixed rationals with no special relations.
const GENERIC: [[i64; 2]; 5] = [[3, 7], [5, 11], [-13, 17], [19, 23], [-29, 31]];

/// True when the invariants restricted to the section have a full-rank
/// Jacobian with respect to the unconstrained parameters, so the section
/// meets orbits transversally and the invariants serve as coordinates on it.
pub fn validate_coordinate_cross_section(cs: &CrossSection, invariants: &[MultiPoly]) -> bool {
    let vars = cs.space.nontrivial_vars();
    let mut fixed = vec![None; vars.len()];
    for (i, value) in &cs.constraints {
        match fixed.get_mut(*i) {
            Some(slot @ None) => *slot = Some(value.clone()),
            _ => return false,
        }
    }
    let free: Vec<Var> = vars.iter().zip(&fixed).filter(|(_, f)| f.is_none()).map(|(v, _)| *v).collect();
    if free.is_empty() || invariants.len() < free.len() {
        return false;
    }
    // A few shifted generic points guard against an accidental rank drop.
    (0..3).any(|shift| {
        let mut k = shift;
        let point: Vec<(Var, Rational)> = vars
            .iter()
            .zip(&fixed)
            .map(|(v, f)| {
                let value = f.clone().unwrap_or_else(|| {
                    let [n, d] = GENERIC[k % GENERIC.len()];
                    k += 1;
                    rat(n, d)
                });
                (*v, value)
            })
            .collect();
        jacobian_rank(invariants, &free, &point).is_ok_and(|r| r == free.len())
    })
}

/// A normalizing group element together with how well it normalizes.
#[derive(Debug, Clone, PartialEq)]
pub struct MovingFrameResult {
    pub element: IsometryElement,
    /// Largest absolute value among the constrained parameters after acting.
    pub residual: f64,
    /// The transformed parameters.
    pub image: [f64; 6],
    /// Notes on branch choices made along the way.
    pub flags: Vec<String>,
}

/// Indices of the parameters the frame sends to zero: `p3, p4, p5`.
const CONSTRAINED: [usize; 3] = [2, 3, 4];

/// The moving frame of an exact parameter vector. Domain checks are exact;
/// the frame itself is computed in floating point.
pub fn moving_frame(p: &KTParams) -> Result<MovingFrameResult> {
    let [a1, a2, a3, a4, a5, a6] = &p.values;
    if a6.is_zero() {
        return Err(Error::NotFree(free_symbol(p.space)));
    }
    if p.space == Space::Minkowski {
        let numerator = int(2) * (a3 * a6 - a4 * a5);
        let denominator = a4 * a4 + a5 * a5 - a6 * (a1 + a2);
        if denominator.is_zero() {
            return Err(Error::OutsideArctanhDomain { argument: None });
        }
        let argument = numerator / denominator;
        if argument.abs() >= int(1) {
            return Err(Error::OutsideArctanhDomain { argument: Some(argument) });
        }
    }
    moving_frame_float(p.space, &p.values.clone().map(|v| rational_to_f64(&v)))
}

fn free_symbol(space: Space) -> &'static str {
    match space {
        Space::Euclidean => "beta6",
        Space::Minkowski => "alpha6",
    }
}

/// Frame in floating point. Euclidean:
/// `θ = −½ arctan(2(β3β6+β4β5) / (β6(β1−β2) − β4² + β5²))`,
/// `a = (β5 cos θ − β4 sin θ)/β6`, `b = (β4 cos θ + β5 sin θ)/β6`.
/// Minkowski:
/// `φ = ½ artanh(2(α3α6−α4α5) / (α4²+α5²−α6(α1+α2)))`,
/// `a = (α4 sinh φ + α5 cosh φ)/α6`, `b = (α4 cosh φ + α5 sinh φ)/α6`.
pub fn moving_frame_float(space: Space, p: &[f64; 6]) -> Result<MovingFrameResult> {
    let [p1, p2, p3, p4, p5, p6] = *p;
    if p6 == 0.0 {
        return Err(Error::NotFree(free_symbol(space)));
    }
    let mut flags = Vec::new();
    let element = match space {
        Space::Euclidean => {
            let numerator = 2.0 * (p3 * p6 + p4 * p5);
            let denominator = p6 * (p1 - p2) - p4 * p4 + p5 * p5;
            let theta = if denominator != 0.0 {
                -0.5 * (numerator / denominator).atan()
            } else if numerator != 0.0 {
                flags.push("arctan denominator vanishes; took theta = -sign(N) pi/4".to_string());
                -numerator.signum() * std::f64::consts::FRAC_PI_4
            } else {
                flags.push("arctan argument is 0/0; took theta = 0".to_string());
                0.0
            };
            let (s, c) = theta.sin_cos();
            IsometryElement::float(space, theta, (p5 * c - p4 * s) / p6, (p4 * c + p5 * s) / p6)
        }
        Space::Minkowski => {
            let numerator = 2.0 * (p3 * p6 - p4 * p5);
            let denominator = p4 * p4 + p5 * p5 - p6 * (p1 + p2);
            let argument = numerator / denominator;
            if !argument.is_finite() || argument.abs() >= 1.0 {
                return Err(Error::OutsideArctanhDomain {
                    argument: Rational::from_float(argument),
                });
            }
            let phi = 0.5 * argument.atanh();
            let (c, s) = (phi.cosh(), phi.sinh());
            IsometryElement::float(space, phi, (p4 * s + p5 * c) / p6, (p4 * c + p5 * s) / p6)
        }
    };
    let image = element.act_kt_float(p);
    let residual = CONSTRAINED.iter().map(|&i| image[i].abs()).fold(0.0, f64::max);
    if residual > FRAME_TOLERANCE {
        return Err(Error::FrameResidual { residual });
    }
    Ok(MovingFrameResult { element, residual, image, flags })
}

/// Equivalence class labels. Euclidean uses `EC1 … EC4`, Minkowski `EC1 … EC10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquivalenceClass {
    EC1,
    EC2,
    EC3,
    EC4,
    EC5,
    EC6,
    EC7,
    EC8,
    EC9,
    EC10,
}

impl EquivalenceClass {
    pub const ALL: [EquivalenceClass; 10] = [
        EquivalenceClass::EC1,
        EquivalenceClass::EC2,
        EquivalenceClass::EC3,
        EquivalenceClass::EC4,
        EquivalenceClass::EC5,
        EquivalenceClass::EC6,
        EquivalenceClass::EC7,
        EquivalenceClass::EC8,
        EquivalenceClass::EC9,
        EquivalenceClass::EC10,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn of_space(space: Space) -> &'static [EquivalenceClass] {
        match space {
            Space::Euclidean => &Self::ALL[..4],
            Space::Minkowski => &Self::ALL,
        }
    }

    /// Whether the canonical form carries the parameter `k²`.
    pub fn needs_k2(self, space: Space) -> bool {
        space == Space::Minkowski
            && matches!(self, EquivalenceClass::EC5 | EquivalenceClass::EC8 | EquivalenceClass::EC9 | EquivalenceClass::EC10)
    }
}

impl fmt::Display for EquivalenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EC{}", self.number())
    }
}

impl FromStr for EquivalenceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix("EC").or_else(|| t.strip_prefix("ec")).unwrap_or(t);
        digits
            .parse::<usize>()
            .ok()
            .and_then(|n| n.checked_sub(1))
            .and_then(|i| Self::ALL.get(i).copied())
            .ok_or_else(|| Error::CanonicalForm(format!("unknown equivalence class {s:?}")))
    }
}

fn nt(space: Space, values: [Rational; 5]) -> NontrivialKT {
    NontrivialKT::from_array(space, values)
}

/// Canonical nontrivial parameters `(p′1, p3, p4, p5, p6)` of a class.
///
/// `k2` is required for Minkowski EC5, EC8, EC9, EC10 (and must be positive)
/// and rejected elsewhere. Euclidean EC4 has a free parameter `β′1`; this
/// returns the member with `β′1 = 1` (see [`euclidean_ec4`]).
pub fn canonical_form(space: Space, ec: EquivalenceClass, k2: Option<&Rational>) -> Result<NontrivialKT> {
    if !EquivalenceClass::of_space(space).contains(&ec) {
        return Err(Error::CanonicalForm(format!("{ec} is not a {space} class")));
    }
    let k = match (ec.needs_k2(space), k2) {
        (true, None) => return Err(Error::CanonicalForm(format!("{ec} requires k2"))),
        (false, Some(_)) => return Err(Error::CanonicalForm(format!("{ec} takes no k2"))),
        (true, Some(k)) if !k.is_positive() => {
            return Err(Error::CanonicalForm(format!("k2 must be positive, got {k}")))
        }
        (_, k) => k.cloned().unwrap_or_else(|| int(0)),
    };
    use EquivalenceClass::*;
    let z = || int(0);
    let values = match space {
        Space::Euclidean => match ec {
            EC1 => [int(1), z(), z(), z(), z()],
            EC2 => [z(), z(), z(), z(), int(1)],
            EC3 => [z(), z(), z(), int(1), z()],
            _ => return Ok(euclidean_ec4(int(1))),
        },
        Space::Minkowski => match ec {
            EC1 => [int(1), z(), z(), z(), z()],
            EC2 => [z(), z(), z(), z(), int(1)],
            EC3 => [rat(1, 2), rat(1, 4), rat(-1, 2), rat(1, 2), z()],
            EC4 => [z(), z(), z(), int(1), z()],
            EC5 => [int(2) * &k, z(), z(), z(), rat(-1, 4)],
            EC6 => [rat(1, 4), rat(1, 4), z(), z(), rat(1, 4)],
            EC7 => [rat(-1, 2), rat(-1, 4), z(), z(), rat(1, 4)],
            EC8 => [z(), -k, z(), z(), rat(1, 4)],
            EC9 => [int(2) * &k, z(), z(), z(), rat(1, 4)],
            EC10 => [int(-2) * &k, z(), z(), z(), rat(1, 4)],
        },
    };
    Ok(nt(space, values))
}

/// Euclidean EC4 canonical form `(β′1 + y²) ∂x⊙∂x − xy ∂x⊙∂y + x² ∂y⊙∂y`.
pub fn euclidean_ec4(beta1p: Rational) -> NontrivialKT {
    nt(Space::Euclidean, [beta1p, int(0), int(0), int(0), int(1)])
}

/// Alternative Euclidean canonical forms, where one is listed.
pub fn canonical_alternative(space: Space, ec: EquivalenceClass) -> Option<NontrivialKT> {
    use EquivalenceClass::*;
    let z = || int(0);
    let values = match (space, ec) {
        (Space::Euclidean, EC1) => [z(), int(1), z(), z(), z()],
        (Space::Euclidean, EC3) => [z(), z(), int(1), z(), z()],
        (Space::Euclidean, EC4) => [z(), int(1), z(), z(), int(1)],
        _ => return None,
    };
    Some(nt(space, values))
}

/// Splits `p = l0·g + embed(nt)` with `nt` free of the second parameter.
pub fn decompose(p: &KTParams) -> (Rational, NontrivialKT) {
    let [p1, p2, p3, p4, p5, p6] = p.values.clone();
    let (l0, first) = match p.space {
        Space::Euclidean => (p2.clone(), p1 - p2),
        Space::Minkowski => (-p2.clone(), p1 + p2),
    };
    (l0, nt(p.space, [first, p3, p4, p5, p6]))
}

/// Inverse of [`decompose`].
pub fn reconstruct(l0: &Rational, nt: &NontrivialKT) -> KTParams {
    nt.space.metric_params().scale(l0).add(&embed_nontrivial(nt))
}

/// [`decompose`] in floating point.
pub fn decompose_float(space: Space, p: &[f64; 6]) -> (f64, [f64; 5]) {
    let [p1, p2, p3, p4, p5, p6] = *p;
    match space {
        Space::Euclidean => (p2, [p1 - p2, p3, p4, p5, p6]),
        Space::Minkowski => (-p2, [p1 + p2, p3, p4, p5, p6]),
    }
}

/// A group element relating two canonical representatives, up to the
/// metric and a positive scale: `decompose(g·embed(from)).nt = scale·to`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceWitness {
    pub space: Space,
    pub from: NontrivialKT,
    pub to: NontrivialKT,
    pub element: IsometryElement,
    pub scale: Rational,
    /// Exact witnesses are checked in rational arithmetic; `residual` is then 0.
    pub exact: bool,
    pub residual: f64,
}

impl EquivalenceWitness {
    pub fn holds(&self) -> bool {
        self.residual <= FRAME_TOLERANCE
    }
}

fn witness(from: NontrivialKT, to: NontrivialKT, element: IsometryElement, scale: Rational) -> Result<EquivalenceWitness> {
    let space = from.space;
    let source = embed_nontrivial(&from);
    let (exact, residual) = if element.is_exact() {
        let (_, image) = decompose(&element.act_kt_params(&source)?);
        let expected = to.values.clone().map(|v| v * &scale);
        let residual = if image.values == expected { 0.0 } else { f64::INFINITY };
        (true, residual)
    } else {
        let (_, image) = decompose_float(space, &element.act_kt_float(&source.values.clone().map(|v| rational_to_f64(&v))));
        let residual = image
            .iter()
            .zip(&to.values)
            .map(|(x, y)| (x - rational_to_f64(&(y * &scale))).abs())
            .fold(0.0, f64::max);
        (false, residual)
    };
    Ok(EquivalenceWitness { space, from, to, element, scale, exact, residual })
}

/// Witnesses for the alternative Euclidean canonical pairs.
///
/// The EC3 pair is related by an exact quarter-turn. The EC1 and EC4 pairs
/// need a rotation by π/4, which has no rational point, so those are checked
/// in floating point (and `K′_I` comes out scaled by 1/2).
pub fn equivalence_witnesses() -> Result<Vec<EquivalenceWitness>> {
    use EquivalenceClass::*;
    let space = Space::Euclidean;
    let quarter_turn = IsometryElement::exact(space, int(0), int(1), int(0), int(0))?;
    let eighth_turn = IsometryElement::float(space, std::f64::consts::FRAC_PI_4, 0.0, 0.0);
    let alt = |ec| canonical_alternative(space, ec).expect("listed alternative");
    Ok(vec![
        witness(canonical_form(space, EC1, None)?, alt(EC1), eighth_turn.clone(), rat(1, 2))?,
        witness(canonical_form(space, EC3, None)?, alt(EC3), quarter_turn, int(1))?,
        witness(euclidean_ec4(int(2)), alt(EC4), eighth_turn, int(1))?,
    ])
}

/// A real boost followed by the reflection `x → −x` taking the Minkowski EC6
/// canonical form to an EC8-shaped vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyWitness {
    pub boost: IsometryElement,
    pub boosted: [f64; 6],
    pub reflected: [f64; 6],
    pub nontrivial: [f64; 5],
    /// `(0, −√3/8, 0, 0, 1/4)`.
    pub target: [f64; 5],
    pub max_error: f64,
    /// `k⁴ = 3/64` for the EC8 image, exact.
    pub k4: Rational,
    /// `(I1, I3)` of the EC6 canonical form.
    pub before: [Rational; 2],
    /// `(I1, I3)` of the EC8 canonical form with `k⁴ = 3/64`, exact.
    pub after: [Rational; 2],
}

impl DegeneracyWitness {
    pub fn holds(&self) -> bool {
        self.max_error <= FRAME_TOLERANCE && self.before == self.after
    }
}

/// Boost with `tanh 2φ = −1/2`, then `R1`.
pub fn ec6_ec8_witness() -> Result<DegeneracyWitness> {
    let space = Space::Minkowski;
    let ec6 = embed_nontrivial(&canonical_form(space, EquivalenceClass::EC6, None)?);
    let boost = IsometryElement::float(space, 0.5 * (-0.5f64).atanh(), 0.0, 0.0);
    let boosted = boost.act_kt_float(&ec6.values.clone().map(|v| rational_to_f64(&v)));
    let reflected = discrete_act_float(&DiscreteReflection::new(vec![Reflection::R1]), &boosted);
    let (_, nontrivial) = decompose_float(space, &reflected);
    let target = [0.0, -(3f64.sqrt()) / 8.0, 0.0, 0.0, 0.25];
    let max_error = nontrivial.iter().zip(&target).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    // α3 after the boost is cosh 2φ (α3 + α′1 tanh 2φ / 2); its square is rational.
    let [p1, _, p3, ..] = &ec6.values;
    let tanh = rat(-1, 2);
    let shifted = p3 + p1 * &tanh / int(2);
    let k4 = &shifted * &shifted / (int(1) - &tanh * &tanh);

    let [i1, _, i3] = invariants_of(space, &ec6.values);
    let k2 = MultiPoly::var(Var::K2);
    let ec8 = [MultiPoly::zero(), MultiPoly::zero(), -k2, MultiPoly::zero(), MultiPoly::zero(), MultiPoly::constant(rat(1, 4))];
    let rule = MultiPoly::constant(k4.clone());
    let after = invariants_of(space, &ec8).map(|q| q.reduce_square(Var::K2, &rule).as_constant());
    let [Some(j1), _, Some(j3)] = after else {
        return Err(Error::CanonicalForm("EC8 invariants depend on odd powers of k2".into()));
    };
    Ok(DegeneracyWitness {
        boost,
        boosted,
        reflected,
        nontrivial,
        target,
        max_error,
        k4,
        before: [i1, i3],
        after: [j1, j3],
    })
}
