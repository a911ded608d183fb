//! Feasible strategies for both players, stored in normalized facility order.

use crate::error::{Error, Player, Result, Violation};
use crate::instance::Instance;
use crate::ratio::Ratio;

/// Resources allocated to each facility by the leader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderStrategy {
    x: Vec<Ratio>,
}

/// Destructive resources spent on each facility by the follower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowerStrategy {
    y: Vec<Ratio>,
}

fn infeasible(player: Player, violation: Violation) -> Error {
    Error::Infeasible { player, violation }
}

fn check_length(player: Player, inst: &Instance, values: &[Ratio]) -> Result<()> {
    if values.len() != inst.len() {
        return Err(infeasible(
            player,
            Violation::Length {
                expected: inst.len(),
                found: values.len(),
            },
        ));
    }
    Ok(())
}

fn check_budget(player: Player, values: &[Ratio], budget: &Ratio) -> Result<()> {
    let total: Ratio = values.iter().sum();
    if &total > budget {
        return Err(infeasible(
            player,
            Violation::OverBudget {
                total,
                budget: budget.clone(),
            },
        ));
    }
    Ok(())
}

impl LeaderStrategy {
    /// Checks `x_i >= 0` and `Σ x_i <= R_l`. `x` is in normalized order.
    pub fn new(inst: &Instance, x: Vec<Ratio>) -> Result<Self> {
        check_length(Player::Leader, inst, &x)?;
        for (pos, xi) in x.iter().enumerate() {
            if xi.is_negative() {
                return Err(infeasible(
                    Player::Leader,
                    Violation::Negative {
                        id: inst.id_of(pos),
                        value: xi.clone(),
                    },
                ));
            }
        }
        check_budget(Player::Leader, &x, inst.leader_budget())?;
        Ok(LeaderStrategy { x })
    }

    /// Like [`LeaderStrategy::new`] but `x` is given in input order.
    pub fn from_original(inst: &Instance, x: Vec<Ratio>) -> Result<Self> {
        check_length(Player::Leader, inst, &x)?;
        LeaderStrategy::new(inst, inst.from_original_order(&x))
    }

    pub fn zero(inst: &Instance) -> Self {
        LeaderStrategy {
            x: vec![Ratio::zero(); inst.len()],
        }
    }

    pub(crate) fn from_vec_unchecked(x: Vec<Ratio>) -> Self {
        LeaderStrategy { x }
    }

    pub fn values(&self) -> &[Ratio] {
        &self.x
    }

    pub fn get(&self, pos: usize) -> &Ratio {
        &self.x[pos]
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn total(&self) -> Ratio {
        self.x.iter().sum()
    }

    pub fn to_original(&self, inst: &Instance) -> Vec<Ratio> {
        inst.to_original_order(&self.x)
    }
}

impl FollowerStrategy {
    /// Checks `0 <= y_i <= a_i` and `Σ y_i <= R_f`. `y` is in normalized order.
    pub fn new(inst: &Instance, y: Vec<Ratio>) -> Result<Self> {
        check_length(Player::Follower, inst, &y)?;
        for (pos, yi) in y.iter().enumerate() {
            if yi.is_negative() {
                return Err(infeasible(
                    Player::Follower,
                    Violation::Negative {
                        id: inst.id_of(pos),
                        value: yi.clone(),
                    },
                ));
            }
            if yi > inst.a(pos) {
                return Err(infeasible(
                    Player::Follower,
                    Violation::AboveQuantity {
                        id: inst.id_of(pos),
                        value: yi.clone(),
                        limit: inst.a(pos).clone(),
                    },
                ));
            }
        }
        check_budget(Player::Follower, &y, inst.follower_budget())?;
        Ok(FollowerStrategy { y })
    }

    /// Like [`FollowerStrategy::new`] but `y` is given in input order.
    pub fn from_original(inst: &Instance, y: Vec<Ratio>) -> Result<Self> {
        check_length(Player::Follower, inst, &y)?;
        FollowerStrategy::new(inst, inst.from_original_order(&y))
    }

    pub fn zero(inst: &Instance) -> Self {
        FollowerStrategy {
            y: vec![Ratio::zero(); inst.len()],
        }
    }

    pub(crate) fn from_vec_unchecked(y: Vec<Ratio>) -> Self {
        FollowerStrategy { y }
    }

    pub fn values(&self) -> &[Ratio] {
        &self.y
    }

    pub fn get(&self, pos: usize) -> &Ratio {
        &self.y[pos]
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn total(&self) -> Ratio {
        self.y.iter().sum()
    }

    pub fn to_original(&self, inst: &Instance) -> Vec<Ratio> {
        inst.to_original_order(&self.y)
    }
}

/// Parses the inline strategy syntax: comma-separated rationals in input
/// order, e.g. `0,7/10,3/10,0,4`.
pub fn parse_inline(text: &str) -> Result<Vec<Ratio>> {
    text.split(',')
        .map(|part| part.parse::<Ratio>().map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::worked;
    use crate::ratio::q;

    #[test]
    fn leader_feasibility() {
        let inst = worked();
        let x = parse_inline("0,7/10,3/10,0,4").unwrap();
        let s = LeaderStrategy::from_original(&inst, x.clone()).unwrap();
        assert_eq!(s.total(), q(5, 1));
        assert_eq!(s.to_original(&inst), x);

        // Under-spending is allowed.
        assert!(LeaderStrategy::from_original(&inst, parse_inline("0,0,0,0,1").unwrap()).is_ok());

        let err = LeaderStrategy::from_original(&inst, parse_inline("1,1,1,1,2").unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::Infeasible {
                player: Player::Leader,
                violation: Violation::OverBudget { .. }
            }
        ));

        let err = LeaderStrategy::from_original(&inst, parse_inline("0,-1,0,0,0").unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::Infeasible {
                violation: Violation::Negative { id: 2, .. },
                ..
            }
        ));

        let err = LeaderStrategy::from_original(&inst, parse_inline("1,2").unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::Infeasible {
                violation: Violation::Length { expected: 5, found: 2 },
                ..
            }
        ));
    }

    #[test]
    fn follower_feasibility() {
        let inst = worked();
        assert!(FollowerStrategy::from_original(&inst, parse_inline("0,7/8,1/8,0,3/4").unwrap()).is_ok());

        let err = FollowerStrategy::from_original(&inst, parse_inline("1,0,0,0,0").unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::Infeasible {
                player: Player::Follower,
                violation: Violation::AboveQuantity { id: 1, .. }
            }
        ));

        let err = FollowerStrategy::from_original(&inst, parse_inline("0,1,1/4,1,0").unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::Infeasible {
                violation: Violation::OverBudget { .. },
                ..
            }
        ));
    }

    #[test]
    fn inline_parse_errors() {
        assert!(parse_inline("1,,2").is_err());
        assert!(parse_inline("1;2").is_err());
        assert_eq!(parse_inline(" 1 , 0.5 ").unwrap(), vec![q(1, 1), q(1, 2)]);
    }
}
