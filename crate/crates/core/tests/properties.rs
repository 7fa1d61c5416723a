use std::collections::BTreeSet;

use proptest::prelude::*;

use scattered_core::catalog::{decompose_parameter, is_scattered, unipotent_param, x_chains, Membership, OrbitLabel, ZhParam};
use scattered_core::chains::{is_linked, Chain, ChainUnion};
use scattered_core::enumerate::{enumerate_scattered, enumerate_scattered_with, extend_rank, EnumerationOptions};
use scattered_core::oracle::{weyl_group, LeviShape, Oracle};
use scattered_core::partitions::{lr_coefficient, Partition};
use scattered_core::spin_lkt::assemble_spin_lkt;
use scattered_core::weights::{dominant_sort, from_fundamental, spin_norm, to_fundamental, Family, GroupType, HalfInt, Weight};

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::B), Just(Family::C), Just(Family::D)]
}

fn census(f: Family, n: usize) -> Vec<ChainUnion> {
    enumerate_scattered(GroupType::new(f, n)).unwrap().reps
}

fn chain() -> impl Strategy<Value = Chain> {
    let a = (1i64..14, 0i64..7).prop_map(|(small, steps)| Chain::A { big: small + 2 * steps, small });
    let x = (family(), 1usize..7, any::<prop::sample::Index>()).prop_map(|(f, n, i)| {
        let all = x_chains(f, n);
        all[i.index(all.len())]
    });
    prop_oneof![a, x]
}

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(Partition::from_multiset)
}

proptest! {
    #[test]
    fn dominant_sort_is_weyl_invariant(f in family(), v in prop::collection::vec(-9i64..10, 1..5), pick in any::<prop::sample::Index>(), half in any::<bool>()) {
        let g = GroupType::new(f, v.len());
        let twice: Vec<i64> = v.iter().map(|x| if half { 2 * x + 1 } else { 2 * x }).collect();
        let w = weyl_group(g);
        let e = &w[pick.index(w.len())];
        let mk = |t: &[i64]| Weight::new(g, t.iter().map(|&x| HalfInt::from_twice(x)).collect()).unwrap();
        let base = dominant_sort(&mk(&twice));
        prop_assert_eq!(dominant_sort(&mk(&e.act(&twice))), base.clone());
        prop_assert!(base.is_dominant());
    }

    #[test]
    fn linking_is_symmetric(a in chain(), b in chain()) {
        prop_assert_eq!(is_linked(&a, &b), is_linked(&b, &a));
    }

    #[test]
    fn transpose_is_an_involution(p in partition(8, 9)) {
        let t = p.transpose();
        prop_assert_eq!(t.size(), p.size());
        prop_assert_eq!(t.transpose(), p);
    }

    #[test]
    fn lr_is_symmetric(a in partition(3, 4), b in partition(3, 4), pick in any::<prop::sample::Index>()) {
        let size = a.size() + b.size();
        let all = Partition::all_of_size(size, 6);
        let lam = &all[pick.index(all.len())];
        prop_assert_eq!(lr_coefficient(&a, &b, lam), lr_coefficient(&b, &a, lam));
    }

    #[test]
    fn lr_with_single_row_is_pieri(a in partition(4, 5), k in 0usize..5, pick in any::<prop::sample::Index>()) {
        let row = Partition::new(vec![k]).unwrap();
        let all = Partition::all_of_size(a.size() + k, 5);
        let lam = &all[pick.index(all.len())];
        // Horizontal strip: interlacing lam_1 ≥ a_1 ≥ lam_2 ≥ a_2 ≥ …
        let n = lam.len().max(a.len()) + 1;
        let strip = (0..n).all(|i| lam.part(i) >= a.part(i) && a.part(i) >= lam.part(i + 1));
        prop_assert_eq!(lr_coefficient(&a, &row, lam), u64::from(strip));
    }

    #[test]
    fn decompose_is_invariant(f in family(), n in 3usize..6, pick in any::<prop::sample::Index>(), perm_seed in any::<u64>(), flips in any::<u8>()) {
        let reps = census(f, n);
        let u = &reps[pick.index(reps.len())];
        let g = u.group;
        let (l, r) = u.zhelobenko_rows();
        let mut cols: Vec<(HalfInt, HalfInt)> = l.coords.iter().copied().zip(r.coords.iter().copied()).collect();
        let mut s = perm_seed;
        for i in (1..cols.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            cols.swap(i, (s >> 33) as usize % (i + 1));
        }
        for (i, c) in cols.iter_mut().enumerate() {
            if flips & (1 << i) != 0 {
                *c = (-c.0, -c.1);
            }
        }
        let p = ZhParam::new(
            Weight::new(g, cols.iter().map(|c| c.0).collect()).unwrap(),
            Weight::new(g, cols.iter().map(|c| c.1).collect()).unwrap(),
        ).unwrap();
        prop_assert_eq!(decompose_parameter(&p, g), Membership::Union(u.clone()));
    }

    #[test]
    fn fundamental_coordinates_round_trip(f in family(), a in prop::collection::vec(0i64..5, 2..5)) {
        let g = GroupType::new(f, a.len());
        let w = from_fundamental(g, &a).unwrap();
        prop_assert!(w.is_dominant());
        prop_assert_eq!(to_fundamental(&w).unwrap(), a);
    }

    #[test]
    fn half_integers_round_trip(t in -500i64..500) {
        let h = HalfInt::from_twice(t);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
        let js = serde_json::to_string(&h).unwrap();
        prop_assert_eq!(serde_json::from_str::<HalfInt>(&js).unwrap(), h);
    }
}

#[test]
fn spin_lkt_invariants() {
    for (f, lo) in [(Family::B, 2), (Family::C, 2), (Family::D, 3)] {
        for n in lo..=8 {
            for u in census(f, n) {
                let s = assemble_spin_lkt(&u).unwrap();
                let mu = s.mu.to_ints().unwrap();
                let q = u.a_rank();
                let nu_total: i64 = s.corrections.iter().flat_map(|c| c.nu.iter()).sum();
                let sum = |v: &[i64]| v.iter().sum::<i64>();
                assert_eq!(sum(&mu), sum(&s.theta_a) + sum(&s.theta_o) + 2 * nu_total, "{u}");
                assert!(mu[q..].windows(2).all(|w| w[0] >= w[1]), "{u}: μ_O not decreasing");
                assert_eq!(spin_norm(&s.mu), u.two_lambda().norm2(), "{u}");
                assert!(s.mu.is_dominant() && s.certificate_ok && !s.used_fallback, "{u}");
                for c in &s.corrections {
                    assert!(c.nu.windows(2).all(|w| w[0] == w[1] + 1), "{u}: ν not a staircase");
                }
            }
        }
    }
}

#[test]
fn scattered_infinitesimal_characters_are_regular() {
    for (f, lo) in [(Family::B, 2), (Family::C, 2), (Family::D, 3)] {
        for n in lo..=7 {
            for u in census(f, n) {
                assert!(is_scattered(&u));
                let t = u.two_lambda().twice();
                assert!(t.windows(2).all(|w| w[0] > w[1]), "{u}");
                match f {
                    Family::D => assert_eq!(*t.last().unwrap(), 0, "{u}"),
                    _ => assert!(*t.last().unwrap() > 0, "{u}"),
                }
            }
        }
    }
}

#[test]
fn coordinate_bound_is_sufficient() {
    for (f, lo) in [(Family::B, 2), (Family::C, 2), (Family::D, 3)] {
        for n in lo..=6 {
            let g = GroupType::new(f, n);
            let wide = enumerate_scattered_with(g, EnumerationOptions { coordinate_bound: Some(2 * n as i64 + 4), ..Default::default() })
                .unwrap();
            assert_eq!(wide.reps, census(f, n), "{g}");
        }
    }
}

#[test]
fn extension_reproduces_next_rank() {
    for (f, lo) in [(Family::B, 2), (Family::C, 2), (Family::D, 4)] {
        for n in lo..8 {
            let image: BTreeSet<ChainUnion> = census(f, n).iter().flat_map(|u| extend_rank(u).unwrap()).collect();
            let next: BTreeSet<ChainUnion> = census(f, n + 1).into_iter().collect();
            assert_eq!(image, next, "{f}{n} -> {f}{}", n + 1);
        }
    }
}

#[test]
fn unipotent_parameters_round_trip() {
    for f in [Family::B, Family::C, Family::D] {
        for x in x_chains(f, 7) {
            let o = OrbitLabel::from_chain(x).unwrap();
            let p = unipotent_param(&o);
            let g = p.group();
            let back = decompose_parameter(&p, g);
            assert_eq!(back, Membership::Union(ChainUnion::new(g, &[x]).unwrap()), "{o}");
        }
    }
}

#[test]
fn constituents_of_symmetric_powers() {
    let mut oracle = Oracle::new();
    for (f, q, r) in [(Family::B, 1, 1), (Family::C, 1, 2), (Family::C, 2, 1), (Family::D, 1, 2), (Family::D, 2, 1), (Family::B, 2, 1)] {
        let shape = LeviShape::new(f, q, r);
        for m in 0..=6 {
            for (g1, g2, mult) in oracle.sym_power_constituents(&shape, m) {
                assert!(mult > 0, "{f} {q} {r} m={m}");
                let a: i64 = g1.iter().sum();
                let b: i64 = g2.iter().map(|x| x.abs()).sum();
                assert!(a >= b, "{f} q={q} r={r} m={m}: {g1:?} {g2:?}");
            }
        }
    }
}

#[test]
fn rank_five_oracle() {
    use scattered_core::record::{verify_census, Check, Status};
    for f in [Family::B, Family::C, Family::D] {
        for v in verify_census(f, 5, &[Check::Oracle, Check::Vanishing, Check::Witness], 5).unwrap() {
            for o in &v.outcomes {
                assert_eq!(o.status, Status::Pass, "{} {}: {}", v.chains, o.check, o.detail);
            }
        }
    }
}

#[test]
fn doubly_linked_chain_is_confirmed_by_oracle() {
    use scattered_core::spin_lkt::certificate_candidates;
    let u = ChainUnion::parse("A(8,4)+A(5,1)+C[2]", None).unwrap();
    let s = assemble_spin_lkt(&u).unwrap();
    assert_eq!(s.mu.to_ints().unwrap(), vec![7, 6, 6, 4, 3, 2, 1]);
    let shape = LeviShape::new(Family::C, 6, 1);
    let mut oracle = Oracle::new();
    let occurring: Vec<Vec<i64>> = certificate_candidates(&u.two_lambda())
        .iter()
        .map(|w| w.to_ints().unwrap())
        .filter(|m| oracle.blattner_multiplicity(&shape, &s.theta_a, &s.theta_o, m, false).total > 0)
        .collect();
    assert_eq!(occurring, vec![s.mu.to_ints().unwrap()]);
    let mu = s.mu.to_ints().unwrap();
    assert_eq!(oracle.frobenius_multiplicity(&shape, &s.theta_a, &s.theta_o, &mu), 1);
}
