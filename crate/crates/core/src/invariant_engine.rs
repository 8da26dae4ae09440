//! Fundamental invariants and covariants of both planes, joint invariants of
//! Euclidean Killing vectors and tensors, and the auxiliary Minkowski
//! invariants used by the web classifier.
//!
//! The formulas are written once over [`Ring`] and evaluated over rationals,
//! floats or symbolic polynomials.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_kernel::{
    int, quadratic_sign_class, rational_sqrt, rational_to_f64, MultiPoly, Rational, Ring, SignClass, Var,
};
use crate::killing_spaces::{
    general_tensor_components, symbolic_kv_params, symbolic_params, KTParams, KVParams, Space,
};
use crate::lie_generators::{annihilation_check, joint_generators};

/// `(I1, I2, I3)` over any ring.
pub fn invariants_of<R: Ring>(space: Space, p: &[R; 6]) -> [R; 3] {
    let [p1, p2, p3, p4, p5, p6] = p.clone();
    let four = R::from_i64(4);
    match space {
        Space::Minkowski => {
            let d = p4.square() + p5.square() - p6.clone() * (p1.clone() + p2.clone());
            let n = p3 * p6.clone() - p4.clone() * p5.clone();
            [
                d.square() - four * n.square(),
                p6.clone() * (p1 - p2) - p4.square() + p5.square(),
                p6,
            ]
        }
        Space::Euclidean => {
            let d = p6.clone() * (p1.clone() - p2.clone()) + p5.square() - p4.square();
            let n = p3 * p6.clone() + p4.clone() * p5.clone();
            [
                d.square() + four * n.square(),
                p6.clone() * (p1 + p2) - p4.square() - p5.square(),
                p6,
            ]
        }
    }
}

/// `(C1, C2)` at the point `(u, v)` over any ring.
pub fn covariants_of<R: Ring>(space: Space, p: &[R; 6], u: &R, v: &R) -> [R; 2] {
    let [p1, p2, p3, p4, p5, p6] = p.clone();
    let four = R::from_i64(4);
    match space {
        Space::Minkowski => {
            let (t, x) = (u.clone(), v.clone());
            let e = p6.clone() * t + p5.clone();
            let f = p6.clone() * x + p4.clone();
            let d = p4.square() + p5.square() - p6.clone() * (p1 + p2);
            let n = p3 * p6 - p4 * p5;
            [
                e.square() - f.square(),
                (e.square() + f.square()) * d + four * e * f * n,
            ]
        }
        Space::Euclidean => {
            let (x, y) = (u.clone(), v.clone());
            let e = p6.clone() * x + p5.clone();
            let f = p6.clone() * y + p4.clone();
            let d = p5.square() - p4.square() + p6.clone() * (p1 - p2);
            let n = p6 * p3 + p4 * p5;
            [
                e.square() + f.square(),
                (e.square() - f.square()) * d + four * e * f * n,
            ]
        }
    }
}

/// Invariants as polynomials in the parameter symbols.
pub fn symbolic_invariants(space: Space) -> [MultiPoly; 3] {
    invariants_of(space, &symbolic_params(space))
}

/// Covariants as polynomials in the parameter and point symbols.
pub fn symbolic_covariants(space: Space) -> [MultiPoly; 2] {
    let (u, v) = space.point_vars();
    covariants_of(space, &symbolic_params(space), &MultiPoly::var(u), &MultiPoly::var(v))
}

pub fn fundamental_invariants(p: &KTParams) -> [Rational; 3] {
    invariants_of(p.space, &p.values)
}

/// Covariants as polynomials in the point symbols.
pub fn fundamental_covariants(p: &KTParams) -> [MultiPoly; 2] {
    let (u, v) = p.space.point_vars();
    let params = p.values.clone().map(MultiPoly::constant);
    covariants_of(p.space, &params, &MultiPoly::var(u), &MultiPoly::var(v))
}

/// Sign classes of `(C1, C2)`, both quadratic in the point.
pub fn covariant_sign_classes(p: &KTParams) -> Result<[SignClass; 2]> {
    let point = p.space.point_vars();
    let [c1, c2] = fundamental_covariants(p);
    Ok([quadratic_sign_class(&c1, point)?, quadratic_sign_class(&c2, point)?])
}

/// `C1 − (I3 tr K̂ − I2)` with symbolic or numeric parameters (Euclidean).
pub fn trace_identity_residual(params: &[MultiPoly; 6]) -> MultiPoly {
    let space = Space::Euclidean;
    let (u, v) = space.point_vars();
    let (pu, pv) = (MultiPoly::var(u), MultiPoly::var(v));
    let [k11, _, k22] = general_tensor_components(space, params, &pu, &pv);
    let [_, i2, i3] = invariants_of(space, params);
    let [c1, _] = covariants_of(space, params, &pu, &pv);
    c1 - (i3 * (k11 + k22) - i2)
}

pub fn trace_identity_check(p: &KTParams) -> Result<MultiPoly> {
    if p.space != Space::Euclidean {
        return Err(Error::SpaceMismatch("the trace identity is stated for the Euclidean plane".into()));
    }
    Ok(trace_identity_residual(&p.values.clone().map(MultiPoly::constant)))
}

/// `(I1, I2, I3, I4, J1, J2)` of a Euclidean Killing vector and Killing tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointInvariants<R> {
    pub i1: R,
    pub i2: R,
    pub i3: R,
    pub i4: R,
    pub j1: R,
    pub j2: R,
}

/// `w1 = β6α1 − β4α3`, `w2 = β6α2 + β5α3`: the vector's translation part as
/// seen from the tensor's centre, scaled by `β6`.
fn centred_vector<R: Ring>(kv: &[R; 3], kt: &[R; 6]) -> (R, R) {
    let [a1, a2, a3] = kv.clone();
    let [_, _, _, b4, b5, b6] = kt.clone();
    (b6.clone() * a1 - b4 * a3.clone(), b6 * a2 + b5 * a3)
}

pub fn j1_of<R: Ring>(kv: &[R; 3], kt: &[R; 6]) -> R {
    let (w1, w2) = centred_vector(kv, kt);
    w2.square() + w1.square()
}

/// `J2 = (w1² − w2²)·D + 4·N·w1·w2` with `D = β6(β1−β2) + β5² − β4²` and
/// `N = β3β6 + β4β5`: the tensor's traceless quadratic form evaluated on
/// `(w1, w2)`.
pub fn j2_of<R: Ring>(kv: &[R; 3], kt: &[R; 6]) -> R {
    let (w1, w2) = centred_vector(kv, kt);
    let [b1, b2, b3, b4, b5, b6] = kt.clone();
    let d = b6.clone() * (b1 - b2) + b5.square() - b4.square();
    let n = b3 * b6 + b4 * b5;
    (w1.square() - w2.square()) * d + R::from_i64(4) * n * w1 * w2
}

pub fn joint_invariants_of<R: Ring>(kv: &[R; 3], kt: &[R; 6]) -> JointInvariants<R> {
    let [i1, i2, i3] = invariants_of(Space::Euclidean, kt);
    JointInvariants {
        i1,
        i2,
        i3,
        i4: kv[2].clone(),
        j1: j1_of(kv, kt),
        j2: j2_of(kv, kt),
    }
}

pub fn joint_invariants(kv: &KVParams, kt: &KTParams) -> Result<JointInvariants<Rational>> {
    if kv.space != Space::Euclidean || kt.space != Space::Euclidean {
        return Err(Error::SpaceMismatch("joint invariants are defined for the Euclidean plane".into()));
    }
    Ok(joint_invariants_of(&kv.values, &kt.values))
}

/// A candidate reading of the second joint invariant.
#[derive(Debug, Clone)]
pub struct J2Candidate {
    pub name: &'static str,
    pub poly: MultiPoly,
}

/// Readings considered for `J2`, in order of preference; the first one that
/// every joint generator annihilates is used.
pub fn j2_candidates() -> Vec<J2Candidate> {
    let kv = symbolic_kv_params(Space::Euclidean);
    let kt = symbolic_params(Space::Euclidean);
    let [a1, a2, a3] = kv.clone();
    let [b1, b2, b3, b4, b5, b6] = kt.clone();
    let (w1, w2) = centred_vector(&kv, &kt);
    let n = &b3 * &b6 + &b4 * &b5;
    let d = &b6 * &(&b1 - &b2) + b5.pow(2) - b4.pow(2);
    let two = MultiPoly::int(2);
    let four = MultiPoly::int(4);
    vec![
        J2Candidate {
            name: "linear, (b6*a2 + a3*b5)(b6*b2 - b5^2) + 2N(b6*a1 - b4*a3)",
            poly: (&b6 * &a2 + &a3 * &b5) * (&b6 * &b2 - b5.pow(2)) + &two * &n * (&b6 * &a1 - &b4 * &a3),
        },
        J2Candidate {
            name: "linear, w2*D + 2N*w1",
            poly: &w2 * &d + &two * &n * &w1,
        },
        J2Candidate {
            name: "quadratic, (w2^2 - w1^2)D + 4N*w1*w2",
            poly: (w2.pow(2) - w1.pow(2)) * &d + &four * &n * &w1 * &w2,
        },
        J2Candidate {
            name: "quadratic, (w1^2 - w2^2)D + 4N*w1*w2",
            poly: j2_of(&kv, &kt),
        },
    ]
}

/// Whether all three joint generators annihilate `f`.
pub fn is_joint_invariant(f: &MultiPoly) -> bool {
    joint_generators(Space::Euclidean, &[1, 2])
        .expect("Euclidean joint generators exist")
        .iter()
        .all(|v| annihilation_check(v, f).is_zero())
}

/// The oracle-selected reading of `J2`.
pub fn selected_j2() -> &'static J2Candidate {
    static SELECTED: OnceLock<J2Candidate> = OnceLock::new();
    SELECTED.get_or_init(|| {
        j2_candidates()
            .into_iter()
            .find(|c| is_joint_invariant(&c.poly))
            .expect("at least one J2 reading must be a joint invariant")
    })
}

/// `k²` as a square root that may be irrational.
#[derive(Debug, Clone, PartialEq)]
pub enum K2Value {
    Exact(Rational),
    Irrational(f64),
}

impl K2Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            K2Value::Exact(r) => rational_to_f64(r),
            K2Value::Irrational(f) => *f,
        }
    }
}

/// `sqrt(radicand) / i3`, exact when the radicand is a rational square.
fn root_over(radicand: &Rational, i3: &Rational) -> K2Value {
    match rational_sqrt(radicand) {
        Some(root) => K2Value::Exact(root / i3),
        None => K2Value::Irrational(rational_to_f64(radicand).sqrt() / rational_to_f64(i3)),
    }
}

/// Auxiliary Minkowski invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxInvariants {
    /// `α4² − α5²`, meaningful on the level set `I3 = 0`.
    pub i1p: Rational,
    /// `2α3α4α5 − α′1α4²`, present only when `I3 = 0` and `I′1 = 0`.
    pub i2p: Option<Rational>,
    /// `√I1 / I3`, for `I1 > 0`.
    pub k2_positive_branch: Option<K2Value>,
    /// `√(−I1) / I3`, for `I1 < 0`.
    pub k2_negative_branch: Option<K2Value>,
    /// `k⁴ I3 + I1` with `k` from the `I1 < 0` branch, i.e. `I1 (1 − 1/I3)`.
    pub istar: Option<Rational>,
}

/// `I′2 = 2α3α4α5 − (α1+α2)α4²`, defined on `{I3 = 0, I′1 = 0}`.
pub fn i_prime_2(p: &KTParams) -> Result<Rational> {
    let [a1, a2, a3, a4, a5, a6] = &p.values;
    if !a6.is_zero() {
        return Err(Error::NotOnInvariantSubmanifold("I3 != 0"));
    }
    if a4 * a4 != a5 * a5 {
        return Err(Error::NotOnInvariantSubmanifold("I'1 != 0"));
    }
    Ok(int(2) * a3 * a4 * a5 - (a1 + a2) * a4 * a4)
}

/// `k⁴ I3 + I1` with `k⁴ = −I1 / I3²`.
pub fn istar_literal(i1: &Rational, i3: &Rational) -> Option<Rational> {
    if i1.is_negative() && !i3.is_zero() {
        Some(i1 * (int(1) - i3.recip()))
    } else {
        None
    }
}

/// `k⁴ I3 + I1` for an externally supplied `k²`.
pub fn istar_with_k2(i1: &Rational, i3: &Rational, k2: &Rational) -> Rational {
    k2 * k2 * i3 + i1
}

pub fn auxiliary_invariants(p: &KTParams) -> Result<AuxInvariants> {
    if p.space != Space::Minkowski {
        return Err(Error::SpaceMismatch("auxiliary invariants are defined for the Minkowski plane".into()));
    }
    let [i1, _, i3] = fundamental_invariants(p);
    let (a4, a5) = (&p.values[3], &p.values[4]);
    let nonzero_i3 = !i3.is_zero();
    Ok(AuxInvariants {
        i1p: a4 * a4 - a5 * a5,
        i2p: i_prime_2(p).ok(),
        k2_positive_branch: (i1.is_positive() && nonzero_i3).then(|| root_over(&i1, &i3)),
        k2_negative_branch: (i1.is_negative() && nonzero_i3).then(|| root_over(&-i1.clone(), &i3)),
        istar: istar_literal(&i1, &i3),
    })
}

/// Symbolic `I′1` (used for invariance checks on `I3 = 0`).
pub fn symbolic_i_prime_1() -> MultiPoly {
    MultiPoly::var(Var::alpha(4)).pow(2) - MultiPoly::var(Var::alpha(5)).pow(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::{integers, rat};
    use crate::lie_generators::{extended_generators, sigma_generators};

    fn mink(values: [i64; 6]) -> KTParams {
        KTParams::from_ints(Space::Minkowski, values)
    }

    #[test]
    fn minkowski_invariant_examples() {
        let ec8 = KTParams::new(Space::Minkowski, vec![int(0), int(0), int(-1), int(0), int(0), rat(1, 4)]).unwrap();
        let [i1, _, i3] = fundamental_invariants(&ec8);
        assert_eq!((i1, i3), (rat(-1, 4), rat(1, 4)));
        assert_eq!(fundamental_invariants(&mink([1, -1, 0, 0, 0, 0])), [int(0), int(0), int(0)]);
        assert_eq!(fundamental_invariants(&mink([1, 2, 3, 4, 5, 6])), [int(513), int(3), int(6)]);
    }

    #[test]
    fn euclidean_covariant_examples() {
        let polar = KTParams::from_ints(Space::Euclidean, [0, 0, 0, 0, 0, 1]);
        let [c1, _] = fundamental_covariants(&polar);
        let (x, y) = (MultiPoly::var(Var::X), MultiPoly::var(Var::Y));
        assert_eq!(c1, x.pow(2) + y.pow(2));
        assert_eq!(c1.eval_rational(&[(Var::X, int(3)), (Var::Y, int(4))]), Some(int(25)));
        let [c1, c2] = fundamental_covariants(&KTParams::zero(Space::Euclidean));
        assert!(c1.is_zero() && c2.is_zero());
    }

    #[test]
    fn invariants_are_annihilated() {
        for space in Space::ALL {
            let generators = sigma_generators(space, 2).unwrap();
            for f in symbolic_invariants(space) {
                assert!(generators.iter().all(|v| annihilation_check(v, &f).is_zero()));
            }
            let extended = extended_generators(space).unwrap();
            for f in symbolic_covariants(space) {
                assert!(extended.iter().all(|v| annihilation_check(v, &f).is_zero()));
            }
        }
    }

    #[test]
    fn trace_identity_holds_and_determinant_does_not() {
        assert!(trace_identity_residual(&symbolic_params(Space::Euclidean)).is_zero());
        let p = KTParams::new(Space::Euclidean, integers(&[3, -1, 2, 5, -4, 7])).unwrap();
        assert!(trace_identity_check(&p).unwrap().is_zero());
        // Replacing the trace with the determinant breaks the identity.
        let params = symbolic_params(Space::Euclidean);
        let (x, y) = (MultiPoly::var(Var::X), MultiPoly::var(Var::Y));
        let [k11, k12, k22] = general_tensor_components(Space::Euclidean, &params, &x, &y);
        let [_, i2, i3] = symbolic_invariants(Space::Euclidean);
        let [c1, _] = symbolic_covariants(Space::Euclidean);
        assert!(!(c1 - (i3 * (&k11 * &k22 - &k12 * &k12) - i2)).is_zero());
        assert!(trace_identity_check(&mink([0; 6])).is_err());
    }

    #[test]
    fn joint_invariant_examples() {
        let kt = KTParams::from_ints(Space::Euclidean, [0, 0, 0, 0, 0, 1]);
        let j = joint_invariants(&KVParams::from_ints(Space::Euclidean, [0, 0, 1]), &kt).unwrap();
        assert_eq!(j.j1, int(0));
        let j = joint_invariants(&KVParams::from_ints(Space::Euclidean, [0, 0, 0]), &kt).unwrap();
        assert_eq!((j.j1, j.j2, j.i4), (int(0), int(0), int(0)));
        let j = joint_invariants(&KVParams::from_ints(Space::Euclidean, [1, 0, 0]), &kt).unwrap();
        assert_eq!(j.j1, int(1));
    }

    #[test]
    fn oracle_selects_the_quadratic_reading() {
        let candidates = j2_candidates();
        let verdicts: Vec<bool> = candidates.iter().map(|c| is_joint_invariant(&c.poly)).collect();
        assert_eq!(verdicts, vec![false, false, false, true]);
        let kv = symbolic_kv_params(Space::Euclidean);
        let kt = symbolic_params(Space::Euclidean);
        assert_eq!(selected_j2().poly, j2_of(&kv, &kt));
        assert!(is_joint_invariant(&j1_of(&kv, &kt)));
        assert!(is_joint_invariant(&kv[2]));
    }

    #[test]
    fn auxiliary_examples() {
        let ec3 = KTParams::new(Space::Minkowski, vec![rat(1, 2), int(0), rat(1, 4), rat(-1, 2), rat(1, 2), int(0)]).unwrap();
        let aux = auxiliary_invariants(&ec3).unwrap();
        assert_eq!(aux.i1p, int(0));
        assert_eq!(aux.i2p, Some(rat(-1, 4)));
        assert_eq!(auxiliary_invariants(&mink([1, 2, 3, 4, 4, 0])).unwrap().i1p, int(0));
        assert_eq!(i_prime_2(&mink([1, 2, 3, 4, 5, 0])), Err(Error::NotOnInvariantSubmanifold("I'1 != 0")));
        assert_eq!(i_prime_2(&mink([1, 2, 3, 4, 4, 1])), Err(Error::NotOnInvariantSubmanifold("I3 != 0")));
    }

    #[test]
    fn istar_literal_and_canonical() {
        let k2 = rat(3, 5);
        let ec8 = KTParams::new(Space::Minkowski, vec![int(0), int(0), -k2.clone(), int(0), int(0), rat(1, 4)]).unwrap();
        let [i1, _, i3] = fundamental_invariants(&ec8);
        assert_eq!(istar_with_k2(&i1, &i3, &k2), int(0));
        let literal = istar_literal(&i1, &i3).unwrap();
        assert_eq!(literal, &k2 * &k2 * rat(3, 4));
        let aux = auxiliary_invariants(&ec8).unwrap();
        assert_eq!(aux.k2_negative_branch, Some(K2Value::Exact(rat(6, 5))));
        assert_eq!(aux.istar, Some(literal));

        let ec6 = KTParams::new(Space::Minkowski, vec![rat(1, 4), int(0), rat(1, 4), int(0), int(0), rat(1, 4)]).unwrap();
        let aux = auxiliary_invariants(&ec6).unwrap();
        assert_eq!(fundamental_invariants(&ec6)[0], rat(-3, 256));
        assert_eq!(aux.istar, Some(rat(9, 256)));
        assert!(matches!(aux.k2_negative_branch, Some(K2Value::Irrational(_))));
    }

    #[test]
    fn ec5_k2_branch_is_negative() {
        let ec5 = KTParams::new(Space::Minkowski, vec![int(2), int(0), int(0), int(0), int(0), rat(-1, 4)]).unwrap();
        let aux = auxiliary_invariants(&ec5).unwrap();
        assert_eq!(fundamental_invariants(&ec5)[0], rat(1, 4));
        assert_eq!(aux.k2_positive_branch, Some(K2Value::Exact(int(-2))));
    }
}
