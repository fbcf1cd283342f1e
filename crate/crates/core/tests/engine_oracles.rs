use std::collections::BTreeSet;

use proptest::prelude::*;
use qcolour_core::clique::{brute_force_clique, omega_sigma};
use qcolour_core::colouring::*;
use qcolour_core::hypergraph::*;
use qcolour_core::partitions::enumerate_partitions;
use qcolour_core::sigma::*;
use qcolour_core::{Decision, PatternSet, Unlimited};

fn subset(all: &PatternSet, mask: u64) -> PatternSet {
    PatternSet::new(all.r(), all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone())).unwrap()
}

/// Every colouring of `v` vertices with exactly `k` colours, first-use order.
fn surjections(v: u32, k: u32, f: &mut impl FnMut(&Colouring)) {
    fn go(c: &mut Vec<u32>, used: u32, v: u32, k: u32, f: &mut impl FnMut(&Colouring)) {
        if c.len() as u32 == v {
            if used == k {
                f(&Colouring::new(c.clone(), k).unwrap());
            }
            return;
        }
        if k - used > v - c.len() as u32 {
            return;
        }
        for x in 0..(used + 1).min(k) {
            c.push(x);
            go(c, used.max(x + 1), v, k, f);
            c.pop();
        }
    }
    go(&mut Vec::new(), 0, v, k, f)
}

fn rows_strategy() -> impl Strategy<Value = (u32, u32, Vec<Vec<u32>>)> {
    (1u32..=4, 1u32..=3, 1u32..=4).prop_flat_map(|(n, q, k)| {
        let row = prop::collection::vec(0..k, q as usize).prop_map(move |labels| {
            let mut row = vec![0u32; k as usize];
            for l in labels {
                row[l as usize] += 1;
            }
            row
        });
        (Just(n), Just(q), prop::collection::vec(row, n as usize))
    })
}

/// A non-empty set of partitions of some `r` in `rs`, plus spare entropy.
fn sets_strategy(rs: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (PatternSet, u64)> {
    rs.prop_flat_map(|r| {
        let n = enumerate_partitions(r).unwrap().len() as u32;
        (1u64..(1 << n), any::<u64>()).prop_map(move |(m, extra)| (subset(&enumerate_partitions(r).unwrap(), m), extra))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn realizable_patterns_match_edges((n, q, rows) in rows_strategy(), (sigma, drop) in sets_strategy(1..=4)) {
        let r = sigma.r();
        prop_assume!(n * q >= r);
        let d = DistributionMatrix::new(q, &rows).unwrap();
        let s = SigmaStructure::new(n, r, q, sigma.clone()).unwrap();
        let h = build_sigma_explicit(&s, BuildLimits::default()).unwrap();
        let c = d.realize();
        let seen = PatternSet::new(r, h.edges().map(|e| pat(e, &c))).unwrap();
        prop_assert_eq!(realizable_patterns(&d, &sigma).unwrap(), seen.clone());
        // remove one realized pattern (if any) so validity can go either way
        let q_set = match seen.iter().nth(drop as usize % seen.len().max(1)) {
            Some(p) => seen.without(p),
            None => seen.clone(),
        };
        prop_assert_eq!(
            dist_valid(&d, &sigma, &q_set).unwrap().is_valid(),
            is_valid(&h, &c, &q_set).unwrap().is_valid()
        );
        prop_assert_eq!(DistributionMatrix::from_colouring(&s, &c).unwrap().canonical(), d.canonical());
    }

    #[test]
    fn canonical_form_ignores_colour_order((_, q, rows) in rows_strategy(), rot in 0usize..4) {
        let d = DistributionMatrix::new(q, &rows).unwrap();
        let k = d.k() as usize;
        let perm: Vec<u32> = (0..k).map(|i| ((i + rot) % k.max(1)) as u32).collect();
        let p = d.permute_colours(&perm).unwrap();
        prop_assert_eq!(p.canonical(), d.canonical());
        prop_assert!(d.canonical().is_canonical());
        prop_assert_eq!(d.canonical().colour_totals().iter().sum::<u32>(), d.n() * q);
    }

    #[test]
    fn sigma_search_matches_explicit(n in 1u32..=3, q in 1u32..=3, (sigma, qm) in sets_strategy(2..=3)) {
        let r = sigma.r();
        prop_assume!(n * q >= r);
        let all = enumerate_partitions(r).unwrap();
        let q_set = subset(&all, qm % ((1 << all.len()) - 1) + 1);
        let s = SigmaStructure::new(n, r, q, sigma).unwrap();
        let h = build_sigma_explicit(&s, BuildLimits::default()).unwrap();
        let a = sigma_spectrum(&s, &q_set, n * q, || Unlimited).unwrap();
        prop_assert_eq!(a.feasible, full_spectrum_explicit(&h, &q_set));
        for k in 1..=n * q {
            if let Decision::Found(d) = sigma_exists_k(&s, &q_set, k, &mut Unlimited).unwrap() {
                prop_assert_eq!(d.k(), k);
                prop_assert!(is_valid(&h, &d.realize(), &q_set).unwrap().is_valid());
            }
        }
    }
}

fn full_spectrum_explicit(h: &Hypergraph, q: &PatternSet) -> Vec<u32> {
    (1..=h.vertex_count())
        .filter(|&k| {
            let mut ok = false;
            surjections(h.vertex_count(), k, &mut |c| ok = ok || is_valid(h, c, q).unwrap().is_valid());
            ok
        })
        .collect()
}

#[test]
fn enumeration_matches_colouring_orbits() {
    let all = enumerate_partitions(3).unwrap();
    for (n, q) in [(2, 3), (3, 2), (4, 2), (2, 4)] {
        for sm in 1..8 {
            for qm in 1..8 {
                let sigma = subset(&all, sm);
                let q_set = subset(&all, qm);
                let s = SigmaStructure::new(n, 3, q, sigma).unwrap();
                let h = build_sigma_explicit(&s, BuildLimits::default()).unwrap();
                for k in 1..=n * q {
                    let mut want = BTreeSet::new();
                    surjections(n * q, k, &mut |c| {
                        if is_valid(&h, c, &q_set).unwrap().is_valid() {
                            want.insert(DistributionMatrix::from_colouring(&s, c).unwrap().canonical());
                        }
                    });
                    let e = enumerate_valid_distributions(&s, &q_set, k, usize::MAX, &mut Unlimited).unwrap();
                    assert!(e.complete);
                    let got: BTreeSet<_> = e.matrices.iter().cloned().collect();
                    assert_eq!(got.len(), e.matrices.len(), "duplicates for n={n} q={q} k={k}");
                    assert_eq!(got, want, "H({n},3,{q}|{}) Q={q_set} k={k}", s.sigma());
                }
            }
        }
    }
}

#[test]
fn explicit_search_matches_brute_force() {
    let all = enumerate_partitions(3).unwrap();
    let grid = build_grid(
        GridShape { rows: 2, cols: 2, cell_size: 2 },
        &subset(&all, 0b011),
        &subset(&all, 0b110),
        3,
        BuildLimits::default(),
    )
    .unwrap();
    for h in [build_complete(7, 3, BuildLimits::default()).unwrap(), grid] {
        for qm in 1..8 {
            let q_set = subset(&all, qm);
            let mut explicit = Vec::new();
            for k in 1..=h.vertex_count() {
                match exists_k_colouring(&h, k, &q_set, &mut Unlimited).unwrap() {
                    Decision::Found(c) => {
                        assert_eq!(c.k(), k);
                        assert_eq!(c.class_sizes().iter().filter(|&&x| x > 0).count() as u32, k);
                        assert!(is_valid(&h, &c, &q_set).unwrap().is_valid());
                        explicit.push(k);
                    }
                    Decision::Infeasible => {}
                    Decision::Unknown => unreachable!(),
                }
            }
            assert_eq!(explicit, full_spectrum_explicit(&h, &q_set), "Q={q_set}");
        }
    }
}

#[test]
fn omega_matches_brute_force_at_r4() {
    let all = enumerate_partitions(4).unwrap();
    for mask in 1..(1u64 << all.len()) {
        let sigma = subset(&all, mask);
        for (n, q) in [(4, 2), (3, 3), (2, 4)] {
            let s = SigmaStructure::new(n, 4, q, sigma.clone()).unwrap();
            let Ok(w) = omega_sigma(&s) else { continue };
            let h = build_sigma_explicit(&s, BuildLimits::default()).unwrap();
            assert_eq!(w.omega, brute_force_clique(&h, 40).unwrap(), "H({n},4,{q}|{sigma})");
        }
    }
}
