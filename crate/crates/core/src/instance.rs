//! Game instances: facilities, budgets, validation and normalization.
//!
//! A validated [`Instance`] stores its facilities sorted by non-increasing
//! production rate, ties broken by ascending original id. All positional
//! indices used elsewhere in the crate (strategies, facility sets) refer to
//! this normalized order; original ids are 1-based input positions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Player, Result};
use crate::ratio::Ratio;

/// One facility as written in an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFacility {
    pub p: Ratio,
    pub a: Ratio,
}

/// Unvalidated instance data, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub facilities: Vec<RawFacility>,
    #[serde(rename = "R_l")]
    pub leader_budget: Ratio,
    #[serde(rename = "R_f")]
    pub follower_budget: Ratio,
}

impl RawInstance {
    /// Parses the JSON instance format. Errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_pairs(pairs: &[(Ratio, Ratio)], leader_budget: Ratio, follower_budget: Ratio) -> Self {
        RawInstance {
            facilities: pairs
                .iter()
                .map(|(p, a)| RawFacility {
                    p: p.clone(),
                    a: a.clone(),
                })
                .collect(),
            leader_budget,
            follower_budget,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facility {
    /// Original 1-based position in the input.
    pub id: usize,
    /// Production rate (assets per resource).
    pub p: Ratio,
    /// Destructive resources needed to destroy the facility completely.
    pub a: Ratio,
}

/// A validated, normalized game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    facilities: Vec<Facility>,
    leader_budget: Ratio,
    follower_budget: Ratio,
    total_quantity: Ratio,
    /// `position_of[id - 1]` is the normalized position of original id `id`.
    position_of: Vec<usize>,
}

/// Checks the game's validity conditions and sorts the facilities.
pub fn validate_instance(raw: &RawInstance) -> Result<Instance> {
    if raw.facilities.is_empty() {
        return Err(Error::EmptyInstance);
    }
    for (k, f) in raw.facilities.iter().enumerate() {
        if !f.p.is_positive() {
            return Err(Error::NonPositiveRate {
                id: k + 1,
                value: f.p.clone(),
            });
        }
        if !f.a.is_positive() {
            return Err(Error::NonPositiveQuantity {
                id: k + 1,
                value: f.a.clone(),
            });
        }
    }
    if !raw.leader_budget.is_positive() {
        return Err(Error::NonPositiveBudget {
            player: Player::Leader,
            value: raw.leader_budget.clone(),
        });
    }
    if !raw.follower_budget.is_positive() {
        return Err(Error::NonPositiveBudget {
            player: Player::Follower,
            value: raw.follower_budget.clone(),
        });
    }
    let total_quantity: Ratio = raw.facilities.iter().map(|f| &f.a).sum();
    if raw.follower_budget >= total_quantity {
        return Err(Error::TrivialFollower {
            follower_budget: raw.follower_budget.clone(),
            total_quantity,
        });
    }

    let mut facilities: Vec<Facility> = raw
        .facilities
        .iter()
        .enumerate()
        .map(|(k, f)| Facility {
            id: k + 1,
            p: f.p.clone(),
            a: f.a.clone(),
        })
        .collect();
    facilities.sort_by(|x, y| y.p.cmp(&x.p).then(x.id.cmp(&y.id)));

    let mut position_of = vec![0; facilities.len()];
    for (pos, f) in facilities.iter().enumerate() {
        position_of[f.id - 1] = pos;
    }

    Ok(Instance {
        facilities,
        leader_budget: raw.leader_budget.clone(),
        follower_budget: raw.follower_budget.clone(),
        total_quantity,
        position_of,
    })
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        validate_instance(&RawInstance::from_json(text)?)
    }

    pub fn len(&self) -> usize {
        self.facilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facilities.is_empty()
    }

    pub fn facilities(&self) -> &[Facility] {
        &self.facilities
    }

    pub fn facility(&self, pos: usize) -> &Facility {
        &self.facilities[pos]
    }

    pub fn p(&self, pos: usize) -> &Ratio {
        &self.facilities[pos].p
    }

    pub fn a(&self, pos: usize) -> &Ratio {
        &self.facilities[pos].a
    }

    pub fn leader_budget(&self) -> &Ratio {
        &self.leader_budget
    }

    pub fn follower_budget(&self) -> &Ratio {
        &self.follower_budget
    }

    /// Σ a_i over all facilities.
    pub fn total_quantity(&self) -> &Ratio {
        &self.total_quantity
    }

    /// Original id of the facility at normalized position `pos`.
    pub fn id_of(&self, pos: usize) -> usize {
        self.facilities[pos].id
    }

    /// Normalized position of original id `id`, if it exists.
    pub fn position_of(&self, id: usize) -> Option<usize> {
        id.checked_sub(1).and_then(|k| self.position_of.get(k).copied())
    }

    /// Reorders per-facility values from normalized order to input order.
    pub fn to_original_order<T: Clone>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.len());
        self.position_of.iter().map(|&pos| values[pos].clone()).collect()
    }

    /// Reorders per-facility values from input order to normalized order.
    pub fn from_original_order<T: Clone>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.len());
        self.facilities.iter().map(|f| values[f.id - 1].clone()).collect()
    }

    /// The instance in input order, as it would be written to a file.
    pub fn to_raw(&self) -> RawInstance {
        let pairs: Vec<(Ratio, Ratio)> = self
            .position_of
            .iter()
            .map(|&pos| (self.p(pos).clone(), self.a(pos).clone()))
            .collect();
        RawInstance::from_pairs(&pairs, self.leader_budget.clone(), self.follower_budget.clone())
    }

    /// The instance in normalized order, so that re-validating it is a no-op.
    pub fn to_raw_normalized(&self) -> RawInstance {
        let pairs: Vec<(Ratio, Ratio)> = self.facilities.iter().map(|f| (f.p.clone(), f.a.clone())).collect();
        RawInstance::from_pairs(&pairs, self.leader_budget.clone(), self.follower_budget.clone())
    }

    /// Same game with every production rate multiplied by `c`.
    pub fn with_scaled_rates(&self, c: &Ratio) -> Instance {
        let mut raw = self.to_raw();
        for f in &mut raw.facilities {
            f.p = &f.p * c;
        }
        validate_instance(&raw).expect("positive scaling preserves validity")
    }

    /// Same game with every destruction quantity and the follower budget
    /// multiplied by `c`.
    pub fn with_scaled_quantities(&self, c: &Ratio) -> Instance {
        let mut raw = self.to_raw();
        for f in &mut raw.facilities {
            f.a = &f.a * c;
        }
        raw.follower_budget = &raw.follower_budget * c;
        validate_instance(&raw).expect("positive scaling preserves validity")
    }

    /// Same game with the leader budget multiplied by `c`.
    pub fn with_scaled_leader_budget(&self, c: &Ratio) -> Instance {
        let mut raw = self.to_raw();
        raw.leader_budget = &raw.leader_budget * c;
        validate_instance(&raw).expect("positive scaling preserves validity")
    }
}

/// A set of facilities, held as sorted, de-duplicated normalized positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FacilitySet(Vec<usize>);

impl FacilitySet {
    pub fn new(positions: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = positions.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FacilitySet(v)
    }

    /// The first `k` facilities in normalized order.
    pub fn prefix(k: usize) -> Self {
        FacilitySet((0..k).collect())
    }

    /// Builds a set from original 1-based ids.
    pub fn from_ids(inst: &Instance, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut positions = Vec::new();
        for id in ids {
            match inst.position_of(id) {
                Some(pos) => positions.push(pos),
                None => return Err(Error::UnknownId { id }),
            }
        }
        Ok(FacilitySet::new(positions))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.0.binary_search(&pos).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// True when the set is `{0, .., k-1}` for some `k`.
    pub fn is_prefix(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &pos)| k == pos)
    }

    pub fn union(&self, other: &FacilitySet) -> FacilitySet {
        FacilitySet::new(self.iter().chain(other.iter()))
    }

    pub fn is_disjoint(&self, other: &FacilitySet) -> bool {
        self.iter().all(|pos| !other.contains(pos))
    }

    /// Original ids of the members, ascending.
    pub fn to_ids(&self, inst: &Instance) -> Vec<usize> {
        let mut ids: Vec<usize> = self.iter().map(|pos| inst.id_of(pos)).collect();
        ids.sort_unstable();
        ids
    }

    pub(crate) fn check_within(&self, inst: &Instance) -> Result<()> {
        match self.max() {
            Some(pos) if pos >= inst.len() => Err(Error::UnknownFacility {
                position: pos,
                len: inst.len(),
            }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for FacilitySet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FacilitySet::new(iter)
    }
}
