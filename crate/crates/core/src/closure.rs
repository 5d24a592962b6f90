use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, RngExt};

use crate::error::{Error, Result};
use crate::split::{Split, SplitSystem};

/// Default cap on the size of a closure before it is abandoned.
pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

fn raw_intersections(s1: &Split, s2: &Split) -> Vec<Split> {
    let sides1 = [s1.bits().clone(), s1.complement()];
    let sides2 = [s2.bits().clone(), s2.complement()];
    let mut out = Vec::with_capacity(4);
    for a in &sides1 {
        for b in &sides2 {
            let mut c: FixedBitSet = a.clone();
            c.intersect_with(b);
            if !c.is_clear() {
                // a proper subset of `a`, hence of X
                let s = Split::from_bits(c).expect("non-empty proper intersection");
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

/// `int(S1, S2)`: every split `A1 ∩ A2 | rest` with `A1 ∈ S1`, `A2 ∈ S2` and
/// `A1 ∩ A2` non-empty.
pub fn intersections(s1: &Split, s2: &Split) -> Result<Vec<Split>> {
    if s1.n() != s2.n() {
        return Err(Error::TaxaMismatch);
    }
    if s1 == s2 {
        return Err(Error::IdenticalSplits);
    }
    Ok(raw_intersections(s1, s2))
}

/// `ι(S1, S2)` for an incompatible pair: the four intersections.
pub fn i_intersection(s1: &Split, s2: &Split) -> Result<Vec<Split>> {
    if s1.n() != s2.n() {
        return Err(Error::TaxaMismatch);
    }
    if s1.compatible_with(s2) {
        return Err(Error::CompatiblePair);
    }
    Ok(raw_intersections(s1, s2))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    All,
    Incompatible,
}

fn close(sigma: &SplitSystem, mode: Mode, cap: usize) -> Result<SplitSystem> {
    let mut list: Vec<Split> = sigma.to_vec();
    let mut seen: HashSet<Split> = list.iter().cloned().collect();
    if list.len() > cap {
        return Err(Error::ClosureCap { cap });
    }
    let mut k = 0;
    while k < list.len() {
        for j in 0..k {
            let (a, b) = (&list[j], &list[k]);
            if mode == Mode::Incompatible && a.compatible_with(b) {
                continue;
            }
            for s in raw_intersections(a, b) {
                if seen.insert(s.clone()) {
                    list.push(s);
                    if list.len() > cap {
                        return Err(Error::ClosureCap { cap });
                    }
                }
            }
        }
        k += 1;
    }
    Ok(sigma.with_splits(list))
}

/// `Int(Σ)`: the least superset of Σ closed under intersections.
pub fn int_closure(sigma: &SplitSystem) -> Result<SplitSystem> {
    close(sigma, Mode::All, DEFAULT_CLOSURE_CAP)
}

pub fn int_closure_capped(sigma: &SplitSystem, cap: usize) -> Result<SplitSystem> {
    close(sigma, Mode::All, cap)
}

/// `I(Σ)`: the least superset of Σ closed under I-intersections.
pub fn i_closure(sigma: &SplitSystem) -> Result<SplitSystem> {
    close(sigma, Mode::Incompatible, DEFAULT_CLOSURE_CAP)
}

pub fn i_closure_capped(sigma: &SplitSystem, cap: usize) -> Result<SplitSystem> {
    close(sigma, Mode::Incompatible, cap)
}

/// Closure driven by a randomly ordered pair worklist. Only used to check
/// that the result does not depend on processing order.
pub fn closure_shuffled<R: Rng + ?Sized>(
    sigma: &SplitSystem,
    incompatible_only: bool,
    rng: &mut R,
) -> Result<SplitSystem> {
    let mut list: Vec<Split> = sigma.to_vec();
    list.shuffle(rng);
    let mut seen: HashSet<Split> = list.iter().cloned().collect();
    let mut work: Vec<(usize, usize)> = Vec::new();
    for k in 0..list.len() {
        for j in 0..k {
            work.push((j, k));
        }
    }
    work.shuffle(rng);
    while let Some((j, k)) = work.pop() {
        if incompatible_only && list[j].compatible_with(&list[k]) {
            continue;
        }
        for s in raw_intersections(&list[j], &list[k]) {
            if seen.insert(s.clone()) {
                list.push(s);
                if list.len() > DEFAULT_CLOSURE_CAP {
                    return Err(Error::ClosureCap {
                        cap: DEFAULT_CLOSURE_CAP,
                    });
                }
                let new = list.len() - 1;
                for i in 0..new {
                    work.push((i, new));
                }
                let len = work.len();
                // move the new pairs to random positions
                for t in (len - new)..len {
                    let r = rng.random_range(0..=t);
                    work.swap(t, r);
                }
            }
        }
    }
    Ok(sigma.with_splits(list))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::CircularOrdering;
    use crate::taxa::TaxaSet;
    use std::sync::Arc;

    fn taxa(n: usize) -> Arc<TaxaSet> {
        Arc::new(TaxaSet::numbered(n).unwrap())
    }

    fn sp(t: &TaxaSet, s: &str) -> Split {
        Split::compact(t, s).unwrap()
    }

    #[test]
    fn int_of_compatible_pair() {
        let t = taxa(5);
        let r = intersections(&sp(&t, "12|345"), &sp(&t, "123|45")).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.contains(&sp(&t, "12|345")));
        assert!(r.contains(&sp(&t, "123|45")));
        assert!(r.contains(&sp(&t, "3|1245")));
    }

    #[test]
    fn int_of_incompatible_quartet() {
        let t = taxa(4);
        let r = intersections(&sp(&t, "12|34"), &sp(&t, "23|14")).unwrap();
        let expect: Vec<Split> = ["1", "2", "3", "4"].iter().map(|s| sp(&t, s)).collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(r, expect);
        assert_eq!(i_intersection(&sp(&t, "12|34"), &sp(&t, "23|14")).unwrap(), expect);
    }

    #[test]
    fn iota_on_six() {
        let t = taxa(6);
        let r = i_intersection(&sp(&t, "12|3456"), &sp(&t, "23|4561")).unwrap();
        let mut expect: Vec<Split> = ["1", "2", "3", "456|123"].iter().map(|s| sp(&t, s)).collect();
        expect.sort();
        assert_eq!(r, expect);
    }

    #[test]
    fn errors() {
        let t = taxa(5);
        let a = sp(&t, "12|345");
        assert_eq!(intersections(&a, &a), Err(Error::IdenticalSplits));
        assert_eq!(
            i_intersection(&a, &sp(&t, "123|45")),
            Err(Error::CompatiblePair)
        );
    }

    #[test]
    fn worked_int_closure() {
        let t = taxa(5);
        let sigma = SplitSystem::compact(&t, &["12|345", "23|451"]).unwrap();
        let expect = SplitSystem::compact(
            &t,
            &["12|345", "23|451", "1|2345", "2|3451", "3|4512", "13|452", "123|45"],
        )
        .unwrap();
        assert_eq!(int_closure(&sigma).unwrap(), expect);
    }

    #[test]
    fn i_closure_examples() {
        let t = taxa(4);
        let sigma = SplitSystem::compact(&t, &["12|34", "23|14"]).unwrap();
        let closed = i_closure(&sigma).unwrap();
        assert_eq!(closed, CircularOrdering::identity(4).all_splits(t.clone()));

        let t5 = taxa(5);
        let o = CircularOrdering::identity(5);
        assert_eq!(
            i_closure(&o.sigma_d(t5.clone()).unwrap()).unwrap(),
            o.all_splits(t5.clone())
        );
        let compat = SplitSystem::compact(&t5, &["12|345", "123|45", "1|2345"]).unwrap();
        assert_eq!(i_closure(&compat).unwrap(), compat);
        let single = SplitSystem::compact(&t5, &["12|345"]).unwrap();
        assert_eq!(int_closure(&single).unwrap(), single);
    }

    #[test]
    fn cap_is_enforced() {
        let t = taxa(5);
        let sigma = SplitSystem::compact(&t, &["12|345", "23|451"]).unwrap();
        assert_eq!(
            int_closure_capped(&sigma, 5),
            Err(Error::ClosureCap { cap: 5 })
        );
    }
}
