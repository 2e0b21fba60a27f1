//! Inquisitive disjunctive normal form.

use super::{Formula, LogicError};

/// Largest number of disjuncts [`dnf_inquisitive`] will produce.
pub const DNF_LIMIT: usize = 4096;

/// Free of `∨` and `⊗`.
pub fn is_standard(f: &Formula) -> bool {
    !f.has_or() && !f.has_tensor()
}

/// Standard formulas whose disjunction is equivalent to `f` under team
/// semantics. `f` must be tensor-free.
pub fn dnf_inquisitive(f: &Formula) -> Result<Vec<Formula>, LogicError> {
    let out = match f {
        Formula::Atom(_) | Formula::Bot | Formula::Top => vec![f.clone()],
        Formula::Tensor(..) => return Err(LogicError::TensorPresent),
        Formula::Or(a, b) => {
            let mut v = dnf_inquisitive(a)?;
            v.extend(dnf_inquisitive(b)?);
            v
        }
        Formula::And(a, b) => {
            let (l, r) = (dnf_inquisitive(a)?, dnf_inquisitive(b)?);
            check(l.len().saturating_mul(r.len()))?;
            l.iter().flat_map(|x| r.iter().map(move |y| Formula::and(x.clone(), y.clone()))).collect()
        }
        Formula::Implies(a, b) => {
            let (l, r) = (dnf_inquisitive(a)?, dnf_inquisitive(b)?);
            let count = (r.len() as u128).checked_pow(l.len() as u32).unwrap_or(u128::MAX);
            check(usize::try_from(count).unwrap_or(usize::MAX))?;
            // one disjunct per choice function from antecedent disjuncts to consequent disjuncts
            let mut choice = vec![0usize; l.len()];
            let mut out = Vec::with_capacity(count as usize);
            loop {
                out.push(Formula::conj(
                    l.iter().zip(&choice).map(|(alpha, &j)| Formula::imp(alpha.clone(), r[j].clone())),
                ));
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < r.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
            out
        }
    };
    check(out.len())?;
    Ok(out)
}

fn check(n: usize) -> Result<(), LogicError> {
    if n > DNF_LIMIT {
        return Err(LogicError::DnfTooLarge(DNF_LIMIT));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, team_valid};

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn fixtures() {
        assert_eq!(dnf_inquisitive(&f("p & ~q")).unwrap(), vec![f("p & ~q")]);
        assert_eq!(dnf_inquisitive(&f("p | q")).unwrap(), vec![f("p"), f("q")]);
        assert_eq!(dnf_inquisitive(&f("~r -> p | q")).unwrap(), vec![f("~r -> p"), f("~r -> q")]);
        assert_eq!(dnf_inquisitive(&f("p (+) q")), Err(LogicError::TensorPresent));
    }

    #[test]
    fn outputs_are_team_equivalent() {
        for s in ["~r -> p | q", "(p | q) -> r", "(p | ~p) & (q | r)", "((p | q) -> r) -> p | ~p", "~(p | q)"] {
            let phi = f(s);
            let out = dnf_inquisitive(&phi).unwrap();
            assert!(out.iter().all(is_standard));
            assert!(team_valid(&Formula::iff(phi, Formula::disj(out)), 3).unwrap(), "{s}");
        }
    }

    #[test]
    fn blow_up_is_refused() {
        let wide = Formula::disj((0..20).map(|i| Formula::atom(format!("p{i}"))));
        let phi = Formula::imp(wide.clone(), Formula::imp(wide.clone(), wide));
        assert_eq!(dnf_inquisitive(&phi), Err(LogicError::DnfTooLarge(DNF_LIMIT)));
    }
}
