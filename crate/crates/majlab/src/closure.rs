//! Membership of a target outcome in the set of strict-majority results
//! realizable by finite electorates drawn from a symmetric family, decided
//! by two independent routes: a case analysis on the family's category, and
//! an exact rational linear program over the family's members.

use num_traits::{One, Signed, Zero};

use crate::arith::{denominator_lcm, rat_int, Rational, Scalar};
use crate::choice::{pairs, ChoiceFunction};
use crate::classify::{is_pseudo_balanced, tiers, Category, SymmetricClass};
use crate::error::{Error, Result};
use crate::profile::VoterProfile;
use crate::ratlin::{lp_maximize, LinearProgram, LpOutcome};
use crate::weights::WeightMatrix;

/// Which decision procedure produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Category case analysis.
    Characterization,
    /// Exact rational linear program.
    LinearProgram,
}

/// Evidence attached to a membership verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<I: Scalar> {
    /// The structural test that settled the question.
    Predicate(&'static str),
    /// Convex weights over family members whose pairwise-weight average
    /// rounds to the target with strict margin `delta` on decided pairs.
    Weights {
        delta: Rational<I>,
        weights: Vec<(ChoiceFunction, Rational<I>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict<I: Scalar> {
    pub member: bool,
    pub route: Route,
    pub certificate: Option<Certificate<I>>,
}

fn check_target(class: &SymmetricClass, d: &ChoiceFunction) -> Result<()> {
    if class.n() != d.n() {
        return Err(Error::CandidateCountMismatch { left: class.n(), right: d.n() });
    }
    Ok(())
}

/// Decide membership by the category case analysis: a trivial family
/// realizes only the all-abstaining outcome (nothing at all if the family
/// is empty), a balanced family realizes exactly the outcomes whose every
/// decided pair lies on a directed cycle, a partisan family realizes
/// exactly the tiered outcomes, and a mixed or chaotic family realizes
/// every outcome.
pub fn decide_fast<I: Scalar>(
    class: &SymmetricClass,
    d: &ChoiceFunction,
) -> Result<MembershipVerdict<I>> {
    check_target(class, d)?;
    let category = class.classify().category;
    let (member, predicate) = match category {
        Category::Trivial => {
            if class.is_void() {
                (false, "an empty family admits no electorate at all")
            } else if d.is_empty() {
                (true, "every electorate from this family decides no pair")
            } else {
                (false, "every electorate from this family decides no pair")
            }
        }
        Category::Balanced => {
            if is_pseudo_balanced(d) {
                (true, "every decided pair of the target lies on a directed cycle")
            } else {
                (false, "some decided pair of the target lies on no directed cycle")
            }
        }
        Category::Partisan => {
            if tiers(d).is_some() {
                (true, "the target is an ordered partition of the candidates")
            } else {
                (false, "the target is not an ordered partition of the candidates")
            }
        }
        Category::Mixed | Category::Chaotic => {
            (true, "the family realizes every outcome")
        }
    };
    Ok(MembershipVerdict {
        member,
        route: Route::Characterization,
        certificate: Some(Certificate::Predicate(predicate)),
    })
}

/// Decide membership by linear programming: maximize the uniform margin
/// `delta` over convex weightings of the family members, subject to the
/// averaged pairwise weights agreeing in sign with the target (zero on its
/// undecided pairs). Membership holds exactly when the optimum is positive.
///
/// On a positive verdict the returned weights are re-checked against the
/// target before being handed out.
pub fn decide_lp<I: Scalar>(
    class: &SymmetricClass,
    d: &ChoiceFunction,
) -> Result<MembershipVerdict<I>> {
    check_target(class, d)?;
    let members = class.members()?;
    let n = class.n();
    let k = members.len();
    let decided: Vec<(usize, usize)> = pairs(n).filter(|&(x, y)| d.weight(x, y) != 0).collect();
    // Variables: one weight per member, then delta, then one slack per
    // decided pair, then the slack of the delta cap.
    let num_vars = k + 1 + decided.len() + 1;
    let delta_col = k;
    let mut constraints: Vec<(Vec<Rational<I>>, Rational<I>)> = Vec::new();

    let mut row = vec![Rational::zero(); num_vars];
    for cell in row.iter_mut().take(k) {
        *cell = Rational::one();
    }
    constraints.push((row, Rational::one()));

    let mut slack = k + 1;
    for (x, y) in pairs(n) {
        let mut row = vec![Rational::zero(); num_vars];
        let orient = d.weight(x, y);
        // Averaged weight toward the target's winner; on undecided pairs the
        // raw orientation is constrained to zero, so either sign works.
        let (w, l) = if orient >= 0 { (x, y) } else { (y, x) };
        for (c, member) in members.iter().enumerate() {
            row[c] = rat_int(member.weight(w, l) as i32);
        }
        if orient != 0 {
            row[delta_col] = -Rational::one();
            row[slack] = -Rational::one();
            slack += 1;
        }
        constraints.push((row, Rational::zero()));
    }
    let mut row = vec![Rational::zero(); num_vars];
    row[delta_col] = Rational::one();
    row[num_vars - 1] = Rational::one();
    constraints.push((row, Rational::one()));

    let mut objective = vec![Rational::zero(); num_vars];
    objective[delta_col] = Rational::one();

    let outcome = lp_maximize(&LinearProgram { num_vars, constraints, objective })?;
    let (value, assignment) = match outcome {
        LpOutcome::Infeasible => {
            return Ok(MembershipVerdict {
                member: false,
                route: Route::LinearProgram,
                certificate: None,
            })
        }
        LpOutcome::Unbounded => {
            return Err(Error::Internal("margin is capped at one, cannot be unbounded".into()))
        }
        LpOutcome::Optimal { value, assignment } => (value, assignment),
    };
    if !value.is_positive() {
        return Ok(MembershipVerdict {
            member: false,
            route: Route::LinearProgram,
            certificate: None,
        });
    }
    let weights: Vec<(ChoiceFunction, Rational<I>)> = members
        .iter()
        .zip(&assignment)
        .filter(|(_, q)| q.is_positive())
        .map(|(c, q)| (c.clone(), q.clone()))
        .collect();
    verify_weights(d, &weights)?;
    Ok(MembershipVerdict {
        member: true,
        route: Route::LinearProgram,
        certificate: Some(Certificate::Weights { delta: value, weights }),
    })
}

/// Check that convex weights actually average to a matrix whose strict
/// majority is the target.
fn verify_weights<I: Scalar>(
    d: &ChoiceFunction,
    weights: &[(ChoiceFunction, Rational<I>)],
) -> Result<()> {
    let matrices: Vec<WeightMatrix<I>> =
        weights.iter().map(|(c, _)| WeightMatrix::of_choice(c)).collect();
    let parts: Vec<(&WeightMatrix<I>, Rational<I>)> =
        matrices.iter().zip(weights).map(|(m, (_, q))| (m, q.clone())).collect();
    let combined = WeightMatrix::convex_combination(&parts)?;
    if combined.majority() != *d {
        return Err(Error::Internal(
            "certificate weights do not reproduce the target outcome".into(),
        ));
    }
    Ok(())
}

/// Clear rational weights to integer ballot multiplicities: scale by the
/// least common denominator. The resulting electorate size is that
/// denominator when the weights sum to one.
pub fn weights_to_profile<I: Scalar>(
    weights: &[(ChoiceFunction, Rational<I>)],
) -> Result<VoterProfile<I>> {
    let n = match weights.first() {
        Some((c, _)) => c.n(),
        None => return Err(Error::EmptyClass),
    };
    for (_, q) in weights {
        if q.is_negative() {
            return Err(Error::NegativeWeight);
        }
    }
    let m = denominator_lcm(weights.iter().map(|(_, q)| q.clone()));
    let mut profile = VoterProfile::new(n)?;
    for (c, q) in weights {
        let mult = (q.clone() * Rational::from_integer(m.clone())).to_integer();
        if !mult.is_zero() {
            profile.add(c.clone(), mult)?;
        }
    }
    Ok(profile)
}

/// Enumerate the full closure at small `n`: every choice function accepted
/// by the case analysis, in canonical order. With `check_lp`, each member
/// is re-decided by the linear program and any disagreement is an error.
pub fn enumerate_closure<I: Scalar>(
    class: &SymmetricClass,
    check_lp: bool,
) -> Result<Vec<ChoiceFunction>> {
    let n = class.n();
    let cap = crate::enumeration_cap();
    if n > cap {
        return Err(Error::CapExceeded(n, cap));
    }
    let mut out = Vec::new();
    for d in crate::choice::all_functions(n) {
        let fast = decide_fast::<I>(class, &d)?;
        if !fast.member {
            continue;
        }
        if check_lp {
            let lp = decide_lp::<I>(class, &d)?;
            if !lp.member {
                return Err(Error::Internal(format!(
                    "routes disagree on {:?}: case analysis accepts, program rejects",
                    d
                )));
            }
        }
        out.push(d);
    }
    Ok(out)
}
