//! Exhaustive enumeration of the series of a finite group.

use std::collections::HashMap;

use crate::permgroup::{ElementSet, GroupError, PermGroup};

use super::{PermSeries, SeriesError};

/// Default bound on the number of series [`normal_series`] returns.
pub const SERIES_CAP: usize = 200_000;

/// Every composition series, found by descending through maximal normal
/// subgroups.
pub fn composition_series(group: &PermGroup) -> Result<Vec<PermSeries>, SeriesError> {
    let mut maximal: HashMap<ElementSet, Vec<PermGroup>> = HashMap::new();
    let mut out = Vec::new();
    let mut chain = vec![group.clone()];
    descend(group, &mut chain, &mut out, usize::MAX, &mut |x: &PermGroup| {
        maximal
            .entry(x.fingerprint().clone())
            .or_insert_with(|| x.maximal_normal_subgroups())
            .clone()
    });
    Ok(out)
}

/// Every normal series (strict chains from `{1}` to the group, each term
/// normal in the next).
pub fn normal_series(group: &PermGroup) -> Result<Vec<PermSeries>, SeriesError> {
    normal_series_capped(group, SERIES_CAP)
}

pub fn normal_series_capped(group: &PermGroup, cap: usize) -> Result<Vec<PermSeries>, SeriesError> {
    let subgroups = group.subgroups()?;
    let mut below: HashMap<ElementSet, Vec<PermGroup>> = HashMap::new();
    for x in &subgroups {
        let normal: Vec<PermGroup> = subgroups
            .iter()
            .filter(|y| {
                y.order() < x.order()
                    && x.order() % y.order() == 0
                    && y.fingerprint().is_subset(x.fingerprint())
                    && y.is_normal_in(x).unwrap_or(false)
            })
            .cloned()
            .collect();
        below.insert(x.fingerprint().clone(), normal);
    }
    let mut out = Vec::new();
    let mut chain = vec![group.clone()];
    descend(group, &mut chain, &mut out, cap, &mut |x: &PermGroup| below[x.fingerprint()].clone());
    if out.len() > cap {
        return Err(SeriesError::Group(GroupError::CapExceeded {
            what: "normal series count",
            cap,
        }));
    }
    Ok(out)
}

/// Depth-first walk from the group down to `{1}`; stops once more than
/// `cap` series are found.
fn descend<F>(group: &PermGroup, chain: &mut Vec<PermGroup>, out: &mut Vec<PermSeries>, cap: usize, next: &mut F)
where
    F: FnMut(&PermGroup) -> Vec<PermGroup>,
{
    let top = chain.last().expect("non-empty chain").clone();
    if top.is_trivial() {
        let mut terms = chain.clone();
        terms.reverse();
        out.push(PermSeries::new(group.clone(), terms).expect("terms are subgroups"));
        return;
    }
    for y in next(&top) {
        if out.len() > cap {
            return;
        }
        chain.push(y);
        descend(group, chain, out, cap, next);
        chain.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::catalog;
    use crate::series::{validate, TransfiniteSeries};

    #[test]
    fn counts_for_small_groups() {
        assert_eq!(composition_series(&catalog::cyclic(6)).unwrap().len(), 2);
        assert_eq!(normal_series(&catalog::cyclic(6)).unwrap().len(), 3);
        assert_eq!(composition_series(&catalog::symmetric(4).unwrap()).unwrap().len(), 3);
        assert_eq!(composition_series(&catalog::cyclic(1)).unwrap().len(), 1);
        let klein4 = catalog::small_groups().into_iter().find(|e| e.name == "C2xC2xC2xC2").unwrap();
        assert_eq!(composition_series(&klein4.group).unwrap().len(), 315);
        assert_eq!(normal_series(&klein4.group).unwrap().len(), 696);
    }

    #[test]
    fn enumerated_series_are_valid() {
        let g = catalog::dihedral(4);
        for s in normal_series(&g).unwrap() {
            assert!(validate(&TransfiniteSeries::Perm(s)).is_valid());
        }
    }
}
