//! Team semantics: formulas are supported by sets of assignments.
//!
//! Subteams of a team with `W` worlds are indexed by `W`-bit masks, and a
//! formula is evaluated once for all subteams at a time.

use super::{Formula, LogicError};
use std::collections::BTreeSet;

/// Largest number of worlds in a team passed to [`team_eval`].
pub const TEAM_MAX_WORLDS: usize = 12;
/// Largest atom count accepted by [`team_valid`].
pub const TEAM_MAX_ATOMS: usize = 3;

/// A set of assignments; bit `i` of an assignment is the value of `atoms[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Team {
    atoms: Vec<String>,
    assignments: Vec<u64>,
}

impl Team {
    pub fn new(atoms: Vec<String>, assignments: Vec<u64>) -> Result<Self, LogicError> {
        let distinct: BTreeSet<&String> = atoms.iter().collect();
        if distinct.len() != atoms.len() {
            return Err(LogicError::InvalidTeam("repeated atom".into()));
        }
        if atoms.len() > 63 {
            return Err(LogicError::TooManyAtoms { got: atoms.len(), limit: 63 });
        }
        let mut seen = BTreeSet::new();
        for &a in &assignments {
            if a >> atoms.len() != 0 {
                return Err(LogicError::InvalidTeam(format!("assignment {a:#b} sets an undeclared atom")));
            }
            if !seen.insert(a) {
                return Err(LogicError::InvalidTeam(format!("assignment {a:#b} is repeated")));
            }
        }
        Ok(Team { atoms, assignments })
    }

    /// Builds a team from rows of atom names that are true.
    pub fn from_true_sets(atoms: &[&str], rows: &[&[&str]]) -> Result<Self, LogicError> {
        let atoms: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
        let mut assignments = Vec::new();
        for row in rows {
            let mut a = 0u64;
            for name in *row {
                let i = atoms.iter().position(|x| x == name).ok_or_else(|| LogicError::UnboundAtom(name.to_string()))?;
                a |= 1 << i;
            }
            assignments.push(a);
        }
        Team::new(atoms, assignments)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn assignments(&self) -> &[u64] {
        &self.assignments
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }
}

/// Support of `f` on every subteam of `worlds`, indexed by subteam mask.
/// Bit `i` of a world is the value of `atoms[i]`.
pub fn support_table(f: &Formula, atoms: &[String], worlds: &[u64]) -> Result<Vec<bool>, LogicError> {
    if worlds.len() > TEAM_MAX_WORLDS {
        return Err(LogicError::TeamTooLarge(format!("{} worlds (limit {TEAM_MAX_WORLDS})", worlds.len())));
    }
    for a in f.atoms() {
        if !atoms.contains(&a) {
            return Err(LogicError::UnboundAtom(a));
        }
    }
    Ok(table(f, atoms, worlds))
}

fn table(f: &Formula, atoms: &[String], worlds: &[u64]) -> Vec<bool> {
    let size = 1usize << worlds.len();
    match f {
        Formula::Atom(p) => {
            let i = atoms.iter().position(|a| a == p).expect("bound atom");
            let truth = worlds.iter().enumerate().filter(|(_, &w)| w >> i & 1 == 1).fold(0usize, |m, (j, _)| m | 1 << j);
            (0..size).map(|s| s & !truth == 0).collect()
        }
        Formula::Bot => (0..size).map(|s| s == 0).collect(),
        Formula::Top => vec![true; size],
        Formula::And(a, b) => zip(table(a, atoms, worlds), table(b, atoms, worlds), |x, y| x && y),
        Formula::Or(a, b) => zip(table(a, atoms, worlds), table(b, atoms, worlds), |x, y| x || y),
        Formula::Tensor(a, b) => {
            let (ta, tb) = (table(a, atoms, worlds), table(b, atoms, worlds));
            (0..size)
                .map(|t| {
                    // s ⊆ t supports a; r = (t ∖ s) ∪ q with q ⊆ s supports b
                    subsets(t).any(|s| ta[s] && subsets(s).any(|q| tb[(t & !s) | q]))
                })
                .collect()
        }
        Formula::Implies(a, b) => {
            let (ta, tb) = (table(a, atoms, worlds), table(b, atoms, worlds));
            let mut bad: Vec<bool> = ta.iter().zip(&tb).map(|(&x, &y)| x && !y).collect();
            for i in 0..worlds.len() {
                for t in 0..size {
                    if t >> i & 1 == 1 && bad[t ^ (1 << i)] {
                        bad[t] = true;
                    }
                }
            }
            bad.into_iter().map(|x| !x).collect()
        }
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

/// All submasks of `t`, including `t` and `0`.
fn subsets(t: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(t);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & t) };
        Some(cur)
    })
}

/// Whether `t` supports `f`.
pub fn team_eval(t: &Team, f: &Formula) -> Result<bool, LogicError> {
    let tab = support_table(f, &t.atoms, &t.assignments)?;
    Ok(tab[tab.len() - 1])
}

/// Whether `f` is supported by every team over the `2^k` assignments to its
/// atoms. Atoms are assigned bits in name order; `f` may use at most `k` atoms.
pub fn team_valid(f: &Formula, k: usize) -> Result<bool, LogicError> {
    if k > TEAM_MAX_ATOMS {
        return Err(LogicError::TeamTooLarge(format!("{k} atoms (limit {TEAM_MAX_ATOMS})")));
    }
    let mut atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.len() > k {
        return Err(LogicError::TooManyAtoms { got: atoms.len(), limit: k });
    }
    while atoms.len() < k {
        atoms.push(format!("_{}", atoms.len()));
    }
    let worlds: Vec<u64> = (0..1u64 << k).collect();
    Ok(support_table(f, &atoms, &worlds)?.into_iter().all(|x| x))
}
