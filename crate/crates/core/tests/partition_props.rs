use proptest::prelude::*;
use qcolour_core::partitions::*;
use qcolour_core::{Partition, PatternSet};

/// p(r) by the standard "largest part at most m" recurrence.
fn partition_count(r: usize) -> u64 {
    let mut p = vec![0u64; r + 1];
    p[0] = 1;
    for m in 1..=r {
        for x in m..=r {
            p[x] += p[x - m];
        }
    }
    p[r]
}

fn subset_of(all: &PatternSet, mask: u64) -> PatternSet {
    PatternSet::new(all.r(), all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone())).unwrap()
}

#[test]
fn counts_match_recurrence() {
    for r in 1..=30u32 {
        let all = enumerate_partitions(r).unwrap();
        assert_eq!(all.len() as u64, partition_count(r as usize), "r = {r}");
    }
}

#[test]
fn enumeration_is_lex_decreasing() {
    for r in 1..=12 {
        let all: Vec<Partition> = enumerate_partitions(r).unwrap().iter().cloned().collect();
        for w in all.windows(2) {
            assert!(w[0].parts() > w[1].parts());
        }
    }
}

#[test]
fn one_step_moves_change_part_count() {
    for r in 1..=9 {
        for p in enumerate_partitions(r).unwrap().iter() {
            for d in reduce_once(p).iter() {
                assert_eq!(d.num_parts() + 1, p.num_parts());
            }
            for d in expand_once(p).iter() {
                assert_eq!(d.num_parts(), p.num_parts() + 1);
            }
        }
    }
}

#[test]
fn expansions_undo_by_reduction() {
    for r in 1..=7 {
        let all = enumerate_partitions(r).unwrap();
        for a in all.iter() {
            let ex = ex_closure(&PatternSet::new(r, [a.clone()]).unwrap()).unwrap();
            for b in all.iter() {
                let rd = rd_closure(&PatternSet::new(r, [b.clone()]).unwrap()).unwrap();
                if ex.contains(b) {
                    assert!(rd.contains(a), "{a} vs {b}");
                }
            }
        }
    }
    // the reverse implication fails: (2,2) merges to (4), which never splits evenly
    let m = PatternSet::from_parts([vec![4]]).unwrap();
    let two = PatternSet::from_parts([vec![2, 2]]).unwrap();
    assert!(rd_closure(&two).unwrap().contains(&Partition::monochromatic(4)));
    assert!(!ex_closure(&m).unwrap().contains(&Partition::new(vec![2, 2]).unwrap()));
}

#[test]
fn dropping_monochromatic_keeps_expansion_closed() {
    for r in 2..=7 {
        let q = enumerate_partitions(r).unwrap().without(&Partition::monochromatic(r));
        assert!(classify_robust(&q).unwrap().expansion_closed, "r = {r}");
    }
}

#[test]
fn stably_bounded_matches_filter() {
    let got = build_family(Family::StablyBounded { s: 2, t: 3, a: 2, b: 3 }, 4).unwrap();
    let want: Vec<Partition> = enumerate_partitions(4)
        .unwrap()
        .iter()
        .filter(|p| (2..=3).contains(&p.num_parts()) && (2..=3).contains(&p.largest()))
        .cloned()
        .collect();
    assert_eq!(got, PatternSet::new(4, want).unwrap());
}

fn arb_set() -> impl Strategy<Value = (PatternSet, PatternSet)> {
    (1u32..=7).prop_flat_map(|r| {
        let n = enumerate_partitions(r).unwrap().len() as u32;
        let full = (1u64 << n) - 1;
        (Just(r), 1..=full, 0..=full).prop_map(|(r, a, b)| {
            let all = enumerate_partitions(r).unwrap();
            (subset_of(&all, a), subset_of(&all, a | b))
        })
    })
}

proptest! {
    #[test]
    fn closures_are_monotone_and_idempotent((x, y) in arb_set()) {
        let r = x.r();
        let (rx, ry) = (rd_closure(&x).unwrap(), rd_closure(&y).unwrap());
        let (ex, ey) = (ex_closure(&x).unwrap(), ex_closure(&y).unwrap());
        prop_assert!(x.is_subset(&rx) && x.is_subset(&ex));
        prop_assert!(rx.is_subset(&ry) && ex.is_subset(&ey));
        prop_assert_eq!(rd_closure(&rx).unwrap(), rx.clone());
        prop_assert_eq!(ex_closure(&ex).unwrap(), ex.clone());
        prop_assert!(rx.contains(&Partition::monochromatic(r)));
        prop_assert!(ex.contains(&Partition::rainbow(r)));
    }

    #[test]
    fn robustness_flags_agree_with_closures((x, _) in arb_set()) {
        let c = classify_robust(&x).unwrap();
        prop_assert_eq!(c.reduction_closed, rd_closure(&x).unwrap() == x);
        prop_assert_eq!(c.expansion_closed, ex_closure(&x).unwrap() == x);
        prop_assert_eq!(c.simply_closed, monochromatic_chain(x.r()).is_subset(&x));
        prop_assert_eq!(c.robust, c.reduction_closed || c.expansion_closed || c.simply_closed);
    }

    #[test]
    fn partitions_normalize(mut parts in prop::collection::vec(1u32..6, 1..8)) {
        let p = Partition::new(parts.clone()).unwrap();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(p.parts(), &parts[..]);
        prop_assert_eq!(p.r(), parts.iter().sum::<u32>());
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
