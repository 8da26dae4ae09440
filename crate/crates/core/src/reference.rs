//! Tabulated formulas kept verbatim, for comparison with what the engine
//! derives: the induced parameter actions, the infinitesimal generators and
//! the Euclidean frame angle. Where a tabulated entry and the derivation
//! disagree, the derivation is used everywhere else and the difference is
//! reported here.

use crate::error::Result;
use crate::exact_kernel::{MultiPoly, Var};
use crate::isometry_actions::{s_squared_rule, symbolic_kt_action, symbolic_kv_action};
use crate::killing_spaces::Space;
use crate::lie_generators::{parameter_domain, sigma_generators, GeneratorMatch, LinearVectorField};

fn al(i: u8) -> MultiPoly {
    MultiPoly::var(Var::alpha(i))
}

fn be(i: u8) -> MultiPoly {
    MultiPoly::var(Var::beta(i))
}

fn group() -> [MultiPoly; 4] {
    [Var::C, Var::S, Var::A, Var::B].map(MultiPoly::var)
}

fn n(k: i64) -> MultiPoly {
    MultiPoly::int(k)
}

/// Tabulated action on Minkowski tensor parameters.
pub fn tabulated_minkowski_kt_action() -> [MultiPoly; 6] {
    let [c, s, a, b] = group();
    let cs = &c * &s;
    [
        al(1) * c.pow(2) + n(2) * al(3) * &cs + al(2) * s.pow(2) + al(6) * b.pow(2)
            - n(2) * (al(4) * &c + al(5) * &s) * &b,
        al(1) * s.pow(2) + n(2) * al(3) * &cs + al(2) * c.pow(2) + al(6) * a.pow(2)
            - n(2) * (al(5) * &c + al(4) * &s) * &a,
        al(3) * (c.pow(2) + s.pow(2)) + (al(1) + al(2)) * &cs
            - (&a * al(4) + &b * al(5)) * &c
            - (&a * al(5) + &b * al(4)) * &s
            + al(6) * &a * &b,
        al(4) * &c + al(5) * &s - al(6) * &b,
        al(4) * &s + al(5) * &c - al(6) * &a,
        al(6),
    ]
}

/// Tabulated action on Euclidean vector parameters.
pub fn tabulated_euclidean_kv_action() -> [MultiPoly; 3] {
    let [c, s, a, b] = group();
    [al(1) * &c - al(2) * &s - &b * al(3), al(1) * &s + al(2) * &c + &a * al(3), al(3)]
}

/// Tabulated action on Euclidean tensor parameters.
pub fn tabulated_euclidean_kt_action() -> [MultiPoly; 6] {
    let [c, s, a, b] = group();
    let cs = &c * &s;
    [
        be(1) * c.pow(2) - n(2) * be(3) * &cs + be(2) * s.pow(2) - n(2) * &b * be(4) * &c
            - n(2) * &b * be(5) * &s
            + be(6) * b.pow(2),
        be(1) * s.pow(2) - n(2) * be(3) * &cs + be(2) * c.pow(2) - n(2) * &a * be(5) * &c
            + n(2) * &a * be(4) * &s
            + be(6) * a.pow(2),
        (be(1) - be(2)) * &s * &c + be(3) * (c.pow(2) - s.pow(2)) + (&a * be(4) + &b * be(5)) * &c
            + (&a * be(5) - &b * be(4)) * &s
            - be(6) * &a * &b,
        be(4) * &c + be(5) * &s - be(6) * &b,
        be(5) * &c - be(4) * &s - be(6) * &a,
        be(6),
    ]
}

/// A component where tabulated and derived disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDiff {
    /// Parameter symbol of the component.
    pub component: Var,
    /// `tabulated − derived`, reduced modulo the curve relation.
    pub difference: MultiPoly,
}

fn diff_components(space: Space, vars: &[Var], tabulated: &[MultiPoly], derived: &[MultiPoly]) -> Vec<ComponentDiff> {
    let rule = s_squared_rule(space);
    vars.iter()
        .zip(tabulated.iter().zip(derived))
        .filter_map(|(&component, (t, d))| {
            let difference = (t - d).reduce_square(Var::S, &rule);
            (!difference.is_zero()).then_some(ComponentDiff { component, difference })
        })
        .collect()
}

/// Differences between the tabulated tensor-parameter action and the derived one.
pub fn kt_action_diffs(space: Space) -> Vec<ComponentDiff> {
    let tabulated = match space {
        Space::Euclidean => tabulated_euclidean_kt_action(),
        Space::Minkowski => tabulated_minkowski_kt_action(),
    };
    diff_components(space, &space.param_vars(), &tabulated, symbolic_kt_action(space))
}

/// Differences for the Euclidean vector-parameter action.
pub fn kv_action_diffs() -> Vec<ComponentDiff> {
    let space = Space::Euclidean;
    diff_components(space, &space.kv_vars(), &tabulated_euclidean_kv_action(), symbolic_kv_action(space))
}

/// Tabulated Σ-generators; `None` where none are listed (Minkowski valence 1).
pub fn tabulated_generators(space: Space, valence: u8) -> Result<Option<Vec<LinearVectorField>>> {
    let domain = parameter_domain(space, valence)?;
    let field = |terms: &[(MultiPoly, Var)]| LinearVectorField::from_terms(domain.clone(), terms);
    let (a, b) = (Var::alpha, Var::beta);
    Ok(match (space, valence) {
        (Space::Minkowski, 2) => Some(vec![
            field(&[(al(4), a(3)), (n(2) * al(5), a(2)), (al(6), a(5))]),
            field(&[(al(5), a(3)), (n(2) * al(4), a(1)), (al(6), a(4))]),
            field(&[
                (n(-2) * al(3), a(1)),
                (-al(5), a(4)),
                (-(al(1) + al(2)), a(3)),
                (n(-2) * al(3), a(2)),
                (-al(4), a(5)),
            ]),
        ]),
        (Space::Euclidean, 1) => Some(vec![
            field(&[(-al(3), a(2))]),
            field(&[(al(3), a(1))]),
            field(&[(al(1), a(2)), (-al(2), a(1))]),
        ]),
        (Space::Euclidean, 2) => Some(vec![
            field(&[(n(-2) * be(5), b(2)), (-be(4), b(3)), (be(6), b(5))]),
            field(&[(n(2) * be(4), b(1)), (-be(5), b(3)), (be(6), b(6))]),
            field(&[
                (n(-2) * be(3), b(1)),
                (n(2) * be(3), b(2)),
                (be(1) - be(2), b(3)),
                (be(5), b(4)),
                (-be(4), b(5)),
            ]),
        ]),
        _ => None,
    })
}

/// How each tabulated generator relates to the derived one.
pub fn generator_comparison(space: Space, valence: u8) -> Result<Option<Vec<GeneratorMatch>>> {
    let Some(tabulated) = tabulated_generators(space, valence)? else {
        return Ok(None);
    };
    let derived = sigma_generators(space, valence)?;
    derived
        .iter()
        .zip(&tabulated)
        .map(|(d, t)| GeneratorMatch::compare(d, t))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Euclidean frame angle as tabulated:
/// `½ arctan(2(β3β6+β4β5) / (β6(β1−β2) − β4² + β5²))`.
/// The working frame uses the opposite sign.
pub fn tabulated_euclidean_theta(p: &[f64; 6]) -> f64 {
    let [p1, p2, p3, p4, p5, p6] = *p;
    0.5 * (2.0 * (p3 * p6 + p4 * p5) / (p6 * (p1 - p2) - p4 * p4 + p5 * p5)).atan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry_actions::IsometryElement;

    #[test]
    fn minkowski_action_matches() {
        assert!(kt_action_diffs(Space::Minkowski).is_empty());
        assert!(kv_action_diffs().is_empty());
    }

    #[test]
    fn euclidean_tensor_action_differs_in_one_cross_term() {
        let diffs = kt_action_diffs(Space::Euclidean);
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].component, Var::beta(2));
        let expected = MultiPoly::int(-4) * be(3) * MultiPoly::var(Var::C) * MultiPoly::var(Var::S);
        assert_eq!(diffs[0].difference, expected);
    }

    #[test]
    fn generator_tags() {
        let tags = |space, valence| -> Vec<&'static str> {
            generator_comparison(space, valence).unwrap().unwrap().iter().map(GeneratorMatch::tag).collect()
        };
        assert_eq!(tags(Space::Minkowski, 2), ["exact"; 3]);
        assert_eq!(tags(Space::Euclidean, 1), ["exact", "exact", "negated"]);
        assert_eq!(tags(Space::Euclidean, 2), ["differs", "differs", "negated"]);
        assert!(generator_comparison(Space::Minkowski, 1).unwrap().is_none());
    }

    #[test]
    fn tabulated_angle_misses_the_section() {
        let p = [1.0, 0.0, 1.0, 0.0, 0.0, 1.0];
        let theta = tabulated_euclidean_theta(&p);
        let image = IsometryElement::float(Space::Euclidean, theta, 0.0, 0.0).act_kt_float(&p);
        assert!(image[2].abs() > 0.5);
        let image = IsometryElement::float(Space::Euclidean, -theta, 0.0, 0.0).act_kt_float(&p);
        assert!(image[2].abs() < 1e-12);
    }
}
