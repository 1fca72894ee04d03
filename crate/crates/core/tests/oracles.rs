use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use cohomorder::cohom::{circular_map, find_cohomomorphism, floor_map, SearchOptions};
use cohomorder::graph::{max_independent_set, strong_product, Graph, SearchBudget};
use cohomorder::lp::{fractional_clique_cover, rational_simplex, LinearProgram, Relation, DEFAULT_CLIQUE_BUDGET};
use cohomorder::{Error, Rational};

fn br(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_rational(x: &BigRational) -> Rational {
    Rational::from(x.clone())
}

/// Solves a square system by Gauss-Jordan elimination; `None` if singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * y;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Best objective over all basic feasible points of `max c.x, A x <= b, x >= 0`.
fn vertex_enumeration(c: &[i64], a: &[Vec<i64>], b: &[i64]) -> Option<BigRational> {
    let n = c.len();
    // hyperplanes: constraint rows, then x_j = 0
    let mut planes: Vec<(Vec<BigRational>, BigRational)> =
        a.iter().zip(b).map(|(row, &r)| (row.iter().map(|&v| br(v)).collect(), br(r))).collect();
    for j in 0..n {
        planes.push(((0..n).map(|k| br((k == j) as i64)).collect(), br(0)));
    }
    let m = planes.len();
    let mut best: Option<BigRational> = None;
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != n {
            continue;
        }
        let chosen: Vec<_> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let Some(x) = solve(
            chosen.iter().map(|&i| planes[i].0.clone()).collect(),
            chosen.iter().map(|&i| planes[i].1.clone()).collect(),
        ) else {
            continue;
        };
        let feasible = x.iter().all(|v| !v.is_negative())
            && a.iter().zip(b).all(|(row, &r)| row.iter().zip(&x).map(|(&k, v)| br(k) * v).sum::<BigRational>() <= br(r));
        if feasible {
            let val: BigRational = c.iter().zip(&x).map(|(&k, v)| br(k) * v).sum();
            if best.as_ref().is_none_or(|b| val > *b) {
                best = Some(val);
            }
        }
    }
    best
}

fn random_graph(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn brute_alpha(g: &Graph) -> usize {
    let n = g.order();
    let nbr: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| g.is_adjacent(u, v)).fold(0, |m, v| m | 1 << v))
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || nbr[u] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Non-adjacent distinct vertices of `E_{p/q}` are at circular distance at least `q`.
fn fraction_cohom_ok(p: u64, q: u64, r: u64, s: u64, map: &[usize]) -> bool {
    let far = |i: u64, j: u64, m: u64, d: u64| {
        let x = i.abs_diff(j) % m;
        x.min(m - x) >= d
    };
    map.len() == p as usize
        && (0..p).all(|i| {
            (0..p).all(|j| i == j || !far(i, j, p, q) || far(map[i as usize] as u64, map[j as usize] as u64, r, s))
        })
}

fn fraction() -> impl Strategy<Value = (u64, u64)> {
    (1u64..5, 0u64..8).prop_map(|(q, k)| (2 * q + k, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_matches_vertex_enumeration(
        n in 1usize..=6,
        m in 1usize..=4,
        seed in proptest::collection::vec(0i64..6, 6 * 4 + 6 + 4),
    ) {
        let c: Vec<i64> = seed[..n].iter().map(|v| v - 1).collect();
        let a: Vec<Vec<i64>> = (0..m).map(|i| (0..n).map(|j| seed[6 + i * 6 + j] + 1).collect()).collect();
        let b: Vec<i64> = (0..m).map(|i| seed[30 + i] + 1).collect();
        let mut lp = LinearProgram::maximize(c.iter().map(|&v| Rational::from(v)).collect());
        for (row, &r) in a.iter().zip(&b) {
            lp = lp.constrain(row.iter().map(|&v| Rational::from(v)).collect(), Relation::Le, Rational::from(r));
        }
        let sol = rational_simplex(&lp).unwrap();
        let oracle = vertex_enumeration(&c, &a, &b).unwrap();
        prop_assert_eq!(&sol.value, &to_rational(&oracle));
        prop_assert!(lp.is_feasible(&sol.x));
        prop_assert_eq!(lp.objective_value(&sol.x), sol.value);
    }

    #[test]
    fn alpha_matches_exhaustive(bits in proptest::collection::vec(proptest::bool::weighted(0.25), 120)) {
        let g = random_graph(16, &bits);
        let s = max_independent_set(&g, SearchBudget::new(u64::MAX)).unwrap();
        prop_assert_eq!(s.size(), brute_alpha(&g));
    }

    #[test]
    fn clique_cover_sandwich(n in 2usize..9, bits in proptest::collection::vec(any::<bool>(), 36)) {
        let g = random_graph(n, &bits);
        let cover = fractional_clique_cover(&g, DEFAULT_CLIQUE_BUDGET).unwrap();
        prop_assert!(cover.is_valid_for(&g));
        prop_assert!(cover.value >= Rational::from(brute_alpha(&g) as i64));
        prop_assert!(cover.value <= Rational::from(n as i64));
    }

    #[test]
    fn floor_maps_compose((p, q) in fraction(), (r, s) in fraction(), (u, v) in fraction()) {
        let mut fr = [(p, q), (r, s), (u, v)];
        fr.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        let [(p, q), (r, s), (u, v)] = fr;
        let f = floor_map(p, r);
        let g = floor_map(r, u);
        prop_assert!(fraction_cohom_ok(p, q, r, s, &f.0));
        prop_assert!(fraction_cohom_ok(r, s, u, v, &g.0));
        prop_assert!(fraction_cohom_ok(p, q, u, v, &f.then(&g).0));
    }
}

#[test]
fn fraction_order_exhaustive() {
    let fr: Vec<(u64, u64)> = (2..=9u64).flat_map(|p| (1..=p / 2).map(move |q| (p, q))).collect();
    let opts = SearchOptions::default();
    for &(p, q) in &fr {
        for &(r, s) in &fr {
            let expect = p * s <= r * q;
            let found = circular_map(p, q, r, s, &opts).unwrap();
            assert_eq!(found.is_some(), expect, "{p}/{q} -> {r}/{s}");
            if let Some((m, _)) = found {
                assert!(fraction_cohom_ok(p, q, r, s, &m.0), "{p}/{q} -> {r}/{s}");
            }
        }
    }
}

#[test]
fn searched_maps_compose_through_products() {
    let c5 = Graph::cycle(5).unwrap();
    let opts = SearchOptions::default();
    let e73 = cohomorder::graph::fraction_graph(7, 3).unwrap();
    let e3 = Graph::empty(3);
    // E_{7/3} -> C5 and C5 -> E_3 compose to E_{7/3} -> E_3
    let f = find_cohomomorphism(&e73, &c5, &opts).unwrap().unwrap();
    let g = find_cohomomorphism(&c5, &e3, &opts).unwrap().unwrap();
    let h = f.then(&g);
    assert!(cohomorder::cohom::verify_cohomomorphism(&e73, &e3, &h));
    assert!(find_cohomomorphism(&c5, &e73, &opts).unwrap().is_none());
    // factorwise maps lift to the strong product
    let src = strong_product(&e73, &e73);
    let tgt = strong_product(&c5, &c5);
    let lifted = cohomorder::cohom::VertexMap((0..49).map(|v| f.image(v / 7) * 5 + f.image(v % 7)).collect());
    assert!(cohomorder::cohom::verify_cohomomorphism(&src, &tgt, &lifted));
    assert!(matches!(
        find_cohomomorphism(&Graph::empty(6), &strong_product(&c5, &c5), &SearchOptions { budget: 1, ..opts }),
        Err(Error::BudgetExhausted { .. })
    ));
}
