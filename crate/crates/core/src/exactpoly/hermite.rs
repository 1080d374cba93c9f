use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{PolyError, Rat, UniPoly};

/// Prescribes `R^{(order)}(node) = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteConstraint {
    pub node: Rat,
    pub order: u32,
    pub value: Rat,
}

impl HermiteConstraint {
    pub fn new(node: Rat, order: u32, value: Rat) -> Self {
        HermiteConstraint { node, order, value }
    }
}

fn factorial(k: usize) -> Rat {
    Rat::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * i))
}

/// The unique polynomial of degree below `constraints.len()` meeting every
/// constraint, computed with confluent divided differences.
///
/// At each node the prescribed orders must be exactly `0..=k` for some `k`.
pub fn hermite_interpolate(constraints: &[HermiteConstraint]) -> Result<UniPoly, PolyError> {
    let mut by_node: BTreeMap<&Rat, BTreeMap<u32, &Rat>> = BTreeMap::new();
    for c in constraints {
        let orders = by_node.entry(&c.node).or_default();
        if orders.insert(c.order, &c.value).is_some() {
            return Err(PolyError::DuplicateConstraint {
                node: c.node.to_string(),
                order: c.order,
            });
        }
    }
    // Repeated-node sequence z and the values used on the diagonal.
    let mut z: Vec<&Rat> = Vec::new();
    let mut derivs: Vec<Vec<&Rat>> = Vec::new();
    for (node, orders) in &by_node {
        let vals: Vec<&Rat> = orders.values().copied().collect();
        for (expected, &order) in orders.keys().enumerate() {
            if order as usize != expected {
                return Err(PolyError::GapInOrders {
                    node: node.to_string(),
                    missing: expected as u32,
                });
            }
        }
        z.extend(std::iter::repeat_n(*node, vals.len()));
        derivs.push(vals);
    }
    let n = z.len();
    if n == 0 {
        return Ok(UniPoly::zero());
    }
    let mut group_of = Vec::with_capacity(n);
    for (g, vals) in derivs.iter().enumerate() {
        group_of.extend(std::iter::repeat_n(g, vals.len()));
    }

    // table[i] holds f[z_i .. z_{i+level}] while sweeping levels.
    let mut table: Vec<Rat> = (0..n).map(|i| derivs[group_of[i]][0].clone()).collect();
    let mut newton = vec![table[0].clone()];
    #[allow(clippy::needless_range_loop)]
    for level in 1..n {
        let mut next = Vec::with_capacity(n - level);
        for i in 0..n - level {
            let j = i + level;
            if z[i] == z[j] {
                next.push(derivs[group_of[i]][level].clone() / factorial(level));
            } else {
                next.push((&table[i + 1] - &table[i]) / (z[j] - z[i]));
            }
        }
        table = next;
        newton.push(table[0].clone());
    }

    // Expand Σ newton[k] Π_{i<k} (t - z_i) by Horner from the top.
    let mut out = UniPoly::zero();
    for k in (0..n).rev() {
        let factor = UniPoly::new(vec![-z[k].clone(), Rat::one()]);
        out = &(&out * &factor) + &UniPoly::constant(newton[k].clone());
    }
    debug_assert!(out.degree().is_none_or(|d| d < n));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, rat_frac};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn hc(node: i64, order: u32, value: i64) -> HermiteConstraint {
        HermiteConstraint::new(rat(node), order, rat(value))
    }

    /// Solves the confluent Vandermonde system by Gaussian elimination.
    fn linear_solve_oracle(cs: &[HermiteConstraint]) -> UniPoly {
        let n = cs.len();
        let mut m: Vec<Vec<Rat>> = cs
            .iter()
            .map(|c| {
                let mut row: Vec<Rat> = (0..n)
                    .map(|j| {
                        let k = c.order as usize;
                        if j < k {
                            Rat::zero()
                        } else {
                            let mut coef = Rat::one();
                            for i in 0..k {
                                coef *= rat((j - i) as i64);
                            }
                            let mut p = Rat::one();
                            for _ in 0..(j - k) {
                                p *= &c.node;
                            }
                            coef * p
                        }
                    })
                    .collect();
                row.push(c.value.clone());
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular");
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    #[allow(clippy::needless_range_loop)]
                    for k in 0..=n {
                        let sub = &f * &m[col][k];
                        m[r][k] -= sub;
                    }
                }
            }
        }
        UniPoly::new(m.into_iter().map(|row| row[n].clone()).collect())
    }

    fn satisfies(p: &UniPoly, cs: &[HermiteConstraint]) -> bool {
        cs.iter().all(|c| p.nth_derivative(c.order).eval(&c.node) == c.value)
    }

    #[test]
    fn double_root_at_zero() {
        let cs = [hc(0, 0, 0), hc(0, 1, 0), hc(1, 0, 3)];
        let p = hermite_interpolate(&cs).unwrap();
        assert_eq!(p, UniPoly::monomial(rat(3), 2));
        assert_eq!(p, linear_solve_oracle(&cs));
    }

    #[test]
    fn single_point_constant() {
        let p = hermite_interpolate(&[hc(0, 0, 5)]).unwrap();
        assert_eq!(p, UniPoly::constant(rat(5)));
    }

    #[test]
    fn lagrange_case() {
        let cs = [hc(0, 0, 0), hc(2, 0, 0), hc(1, 0, 1)];
        let p = hermite_interpolate(&cs).unwrap();
        // Lagrange form: only the basis polynomial at node 1 survives.
        let lagrange = UniPoly::new(vec![rat(0), rat(2), rat(-1)]);
        assert_eq!(p, lagrange);
        assert_eq!(p.to_string(), "-t^2 + 2*t");
    }

    #[test]
    fn rejects_bad_constraint_sets() {
        assert!(matches!(
            hermite_interpolate(&[hc(1, 0, 0), hc(1, 0, 2)]),
            Err(PolyError::DuplicateConstraint { order: 0, .. })
        ));
        assert!(matches!(
            hermite_interpolate(&[hc(1, 0, 0), hc(1, 2, 2)]),
            Err(PolyError::GapInOrders { missing: 1, .. })
        ));
        assert!(matches!(
            hermite_interpolate(&[hc(1, 1, 0)]),
            Err(PolyError::GapInOrders { missing: 0, .. })
        ));
    }

    fn constraint_sets() -> impl Strategy<Value = Vec<HermiteConstraint>> {
        prop::collection::btree_map(-6i64..6, (0u32..3, prop::collection::vec(-9i64..9, 3), 1i64..4), 1..4).prop_map(
            |m| {
                let mut out = Vec::new();
                for (node, (k, vals, den)) in m {
                    for order in 0..=k {
                        out.push(HermiteConstraint::new(
                            rat_frac(node, 2),
                            order,
                            rat_frac(vals[order as usize], den),
                        ));
                    }
                }
                out
            },
        )
    }

    proptest! {
        #[test]
        fn interpolant_meets_constraints(cs in constraint_sets()) {
            let p = hermite_interpolate(&cs).unwrap();
            prop_assert!(satisfies(&p, &cs));
            prop_assert!(p.degree().is_none_or(|d| d < cs.len()));
            prop_assert_eq!(p, linear_solve_oracle(&cs));
        }
    }
}
