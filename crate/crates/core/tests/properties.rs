use num_bigint::BigInt;
use proptest::prelude::*;

use vkinv::algebra::{smith_decomposition, solve_mod, FiniteGroup, IntMatrix};
use vkinv::biquandle::{Biquandle, WadaKind};
use vkinv::cocycle::{boundary2, delta1, delta2, evaluate, Chain2, Cochain1, Coefficients};
use vkinv::coloring::count_colorings;
use vkinv::diagram::{parse_braid, parse_gauss, BraidLetter, Diagram, GaussCode, VirtualBraidWord};
use vkinv::numbering::{integer_numbering, mod2_numbering};
use vkinv::wadagroup::{braid_matrix, hom_count, presentation, simplify};

fn braid_strategy(max_strands: usize, max_len: usize) -> impl Strategy<Value = VirtualBraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((0..3u8, 1..n), 0..=max_len).prop_map(move |letters| {
            let letters = letters
                .into_iter()
                .map(|(kind, i)| match kind {
                    0 => BraidLetter::Sigma(i),
                    1 => BraidLetter::SigmaInv(i),
                    _ => BraidLetter::Virtual(i),
                })
                .collect();
            VirtualBraidWord::new(n, letters).unwrap()
        })
    })
}

/// Arbitrary Gauss codes: every crossing appears once over and once under, in
/// shuffled order, split into up to three components.
fn gauss_strategy(max_crossings: usize) -> impl Strategy<Value = GaussCode> {
    (0..=max_crossings).prop_flat_map(|k| {
        (
            prop::collection::vec(any::<bool>(), k),
            Just((0..2 * k).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(0..3usize, 2 * k),
        )
            .prop_map(move |(signs, order, cuts)| {
                let mut comps: Vec<String> = vec![String::new(); 3];
                for (slot, comp) in order.into_iter().zip(cuts) {
                    let c = slot / 2;
                    let layer = if slot % 2 == 0 { 'O' } else { 'U' };
                    let sign = if signs[c] { '+' } else { '-' };
                    comps[comp].push_str(&format!("{layer}{}{sign} ", c + 1));
                }
                let text: Vec<&str> = comps.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
                parse_gauss(&text.join(" / ")).unwrap()
            })
    })
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
    })
}

fn cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut n = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            n += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solve_mod_matches_brute_force(rows in matrix_strategy(), n in 2u64..=6) {
        let cols = rows[0].len();
        let a = IntMatrix::from_rows(&rows, cols);
        let mut fast: Vec<Vec<u64>> = solve_mod(&a, n).iter().collect();
        fast.sort();
        let mut slow = Vec::new();
        for k in 0..n.pow(cols as u32) {
            let x: Vec<u64> = (0..cols).map(|i| (k / n.pow(i as u32)) % n).collect();
            let ok = rows.iter().all(|r| {
                r.iter().zip(&x).map(|(a, b)| a * *b as i64).sum::<i64>().rem_euclid(n as i64) == 0
            });
            if ok {
                slow.push(x);
            }
        }
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn smith_decomposition_is_consistent(rows in matrix_strategy()) {
        let a = IntMatrix::from_rows(&rows, rows[0].len());
        let s = smith_decomposition(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert_eq!(&s.d[(i, j)], &BigInt::from(0));
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
    }

    #[test]
    fn gauss_round_trip(code in gauss_strategy(6)) {
        let again = parse_gauss(&code.to_string()).unwrap();
        prop_assert_eq!(again, code);
    }

    #[test]
    fn braid_round_trip(w in braid_strategy(4, 10)) {
        prop_assert_eq!(parse_braid(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn components_are_permutation_cycles(w in braid_strategy(5, 12)) {
        let d = Diagram::from_gauss(&w.close());
        prop_assert_eq!(d.component_count(), cycles(&w.permutation()));
        prop_assert_eq!(d.crossing_count(), w.letters().iter().filter(|l| !matches!(l, BraidLetter::Virtual(_))).count());
    }

    #[test]
    fn ones_are_a_left_eigenvector(w in braid_strategy(4, 12)) {
        let m = braid_matrix(&w);
        for j in 0..m.cols() {
            let s: BigInt = (0..m.rows()).map(|i| m[(i, j)].clone()).sum();
            prop_assert_eq!(s, BigInt::from(1));
        }
    }

    #[test]
    fn integer_numbering_reduces_mod_two(code in gauss_strategy(5)) {
        let d = Diagram::from_gauss(&code);
        if let Some(n) = integer_numbering(&d) {
            prop_assert!(n.is_valid(&d));
            prop_assert!(n.to_mod2().is_valid(&d));
            prop_assert!(mod2_numbering(&d).is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundaries_compose_to_zero(n in 2usize..=5, g in prop::collection::vec(-3i64..=3, 5), kind in 0..3usize) {
        let b = if kind == 0 {
            Biquandle::abelian_wada(n).unwrap()
        } else {
            let group = FiniteGroup::cyclic(n).unwrap();
            Biquandle::from_wada(&WadaKind::ALL[kind].pair(), &group).unwrap()
        };
        let coeff = Coefficients::Mod(7);
        let g = Cochain1::from_fn(n, coeff, |x| g[x % g.len()]);
        prop_assert!(delta2(&delta1(&g, &b), &b).is_zero());
    }

    #[test]
    fn simplify_preserves_hom_counts(code in gauss_strategy(4), kind in 0..3usize, spec in prop::sample::select(vec!["z:3", "s:3", "d:4"])) {
        let g = FiniteGroup::parse_spec(spec).unwrap();
        let p = presentation(&Diagram::from_gauss(&code), WadaKind::ALL[kind]);
        prop_assert_eq!(hom_count(&simplify(&p), &g), hom_count(&p, &g));
    }

    #[test]
    fn hom_counts_equal_coloring_counts(code in gauss_strategy(5), kind in 0..3usize, spec in prop::sample::select(vec!["z:4", "s:3", "d:4", "sd:5:4:2"])) {
        let g = FiniteGroup::parse_spec(spec).unwrap();
        let kind = WadaKind::ALL[kind];
        let d = Diagram::from_gauss(&code);
        let b = Biquandle::from_wada(&kind.pair(), &g).unwrap();
        prop_assert_eq!(hom_count(&presentation(&d, kind), &g), count_colorings(&d, &b));
    }

    #[test]
    fn coboundaries_vanish_on_cycles(n in 2usize..=7, g in prop::collection::vec(-9i64..=9, 7)) {
        let b = Biquandle::abelian_wada(n).unwrap();
        let coeff = Coefficients::Mod(n as u64);
        // columns are pairs (x, y), rows are carrier elements
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|z| {
                (0..n * n)
                    .map(|j| boundary2(j / n, j % n, &b).0.get(&z).copied().unwrap_or(0))
                    .collect()
            })
            .collect();
        let cycles = solve_mod(&IntMatrix::from_rows(&rows, n * n), n as u64);
        let cob = delta1(&Cochain1::from_fn(n, coeff, |x| g[x]), &b);
        for x in cycles.iter().take(64) {
            let terms: Vec<((usize, usize), i64)> = x
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| ((j / n, j % n), k as i64))
                .collect();
            let c = Chain2::from_terms(&terms);
            prop_assert!(c.is_cycle(&b, coeff));
            prop_assert_eq!(evaluate(&cob, &c), 0);
        }
    }
}
