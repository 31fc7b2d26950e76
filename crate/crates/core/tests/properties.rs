use calogero_core::lattice::{dominance_leq, enumerate_mu, height, partitions_of, IntVec, MuVector, Partition};
use calogero_core::oracle::jack_oracle;
use calogero_core::rational::{frac, int};
use calogero_core::singular::{alpha_closed, alpha_recursive};
use calogero_core::spectrum::{eigenvalue, gap_b, groundstate_energy, ModelParams};
use calogero_core::{Rat, SymPoly};
use proptest::prelude::*;

fn lam_strategy() -> impl Strategy<Value = Rat> {
    (1i64..=7, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn intvec(n: usize) -> impl Strategy<Value = IntVec> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| IntVec::new(v).unwrap())
}

fn partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0i64..=5, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn mu(n: usize) -> impl Strategy<Value = MuVector> {
    prop::collection::vec(0u32..=3, n * (n - 1) / 2).prop_map(move |m| MuVector::new(n, m).unwrap())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn dominance_is_a_partial_order(a in intvec(3), b in intvec(3), c in intvec(3)) {
        prop_assert!(dominance_leq(&a, &a).unwrap());
        if dominance_leq(&a, &b).unwrap() && dominance_leq(&b, &a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if dominance_leq(&a, &b).unwrap() && dominance_leq(&b, &c).unwrap() {
            prop_assert!(dominance_leq(&a, &c).unwrap());
        }
    }

    #[test]
    fn lowering_moves_down(n in intvec(4), m in mu(4)) {
        let d = m.displacement();
        prop_assert_eq!(d.sum(), 0);
        prop_assert!(dominance_leq(&(&n + &d), &n).unwrap());
        prop_assert!(height(&d).is_some());
    }

    #[test]
    fn gap_is_an_eigenvalue_difference(lam in lam_strategy(), n in intvec(3), m in intvec(3)) {
        let p = ModelParams::cs(3, lam).unwrap();
        let b = gap_b(&p, &n, &m).unwrap();
        prop_assert_eq!(b, eigenvalue(&p, &m).unwrap() - eigenvalue(&p, &n).unwrap());
    }

    #[test]
    fn cs_gap_is_at_least_two_lambda(lam in lam_strategy(), n in partition(4), m in mu(4)) {
        prop_assume!(m.depth() > 0);
        let p = ModelParams::cs(4, lam.clone()).unwrap();
        let n = n.to_intvec();
        let b = gap_b(&p, &n, &(&n + &m.displacement())).unwrap();
        prop_assert!(b >= int(2) * lam);
    }

    #[test]
    fn truncation_is_consistent(lam in lam_strategy(), n in partition(3), lo in 0u64..5) {
        let p = ModelParams::cs(3, lam).unwrap();
        let n = n.to_intvec();
        let deep = alpha_recursive(&p, &n, 6).unwrap();
        let shallow = alpha_recursive(&p, &n, lo).unwrap();
        let cut = deep.truncate(lo);
        prop_assert_eq!(cut.alpha(), shallow.alpha());
    }

    #[test]
    fn jack_json_round_trip(lam in lam_strategy(), n in partition(3)) {
        let p = jack_oracle(3, &lam, &n).unwrap();
        prop_assert_eq!(SymPoly::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn enumeration_counts() {
    for n in 2..=4usize {
        let slots = (n * (n - 1) / 2) as u64;
        for depth in 0..=5u64 {
            let got = enumerate_mu(n, depth).unwrap().len() as u64;
            assert_eq!(got, binomial(depth + slots, slots), "N = {n}, depth = {depth}");
        }
    }
}

#[test]
fn partition_counts() {
    // partitions of 6 into at most 3 and 4 parts
    assert_eq!(partitions_of(6, 3).len(), 7);
    assert_eq!(partitions_of(6, 4).len(), 9);
}

#[test]
fn groundstate_energy_is_the_ground_eigenvalue() {
    for n in 2..=6 {
        let p = ModelParams::cs(n, frac(5, 3)).unwrap();
        assert_eq!(groundstate_energy(&p), eigenvalue(&p, &IntVec::zeros(n)).unwrap());
    }
}

#[test]
fn closed_form_matches_recursion() {
    let p = ModelParams::with_masses(vec![int(1), frac(3, 2), int(2)], frac(2, 3)).unwrap();
    let n = IntVec::new(vec![3, 1, 0]).unwrap();
    let table = alpha_recursive(&p, &n, 4).unwrap();
    for (d, a) in table.alpha() {
        let h = height(d).unwrap();
        assert_eq!(&alpha_closed(&p, &n, d, h).unwrap(), a, "offset {d}");
    }
}
