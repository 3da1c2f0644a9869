use crate::exact::WeightSeq;

/// Restricted partition function `p_a(n)`: the number of nonnegative integer
/// solutions of `a_1 x_1 + … + a_r x_r = n` (coin-counting dynamic program).
pub fn restricted_partition(a: &WeightSeq, n: u64) -> u128 {
    let n = n as usize;
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for &coin in a.weights() {
        let coin = coin as usize;
        for total in coin..=n {
            ways[total] += ways[total - coin];
        }
    }
    ways[n]
}

/// Coefficients of `∏_i (1 + t^{a_i} + … + t^{a_i (D/a_i - 1)})`, i.e. the
/// bounded denumerants `f_a(0), …, f_a(D r - Σ a_i)`.
pub fn bounded_denumerant_table(a: &WeightSeq) -> Vec<u128> {
    let d = a.period() as usize;
    let top = d * a.len() - a.total() as usize;
    let mut counts = vec![0u128; top + 1];
    counts[0] = 1;
    for &coin in a.weights() {
        let coin = coin as usize;
        let max_copies = d / coin - 1;
        let mut next = vec![0u128; top + 1];
        for (n, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for x in 0..=max_copies {
                let target = n + coin * x;
                if target > top {
                    break;
                }
                next[target] += c;
            }
        }
        counts = next;
    }
    counts
}

/// `f_a(n)`: solutions of `Σ a_i x_i = n` with `0 ≤ x_i ≤ D/a_i - 1`.
pub fn bounded_denumerant(a: &WeightSeq, n: u64) -> u128 {
    bounded_denumerant_table(a)
        .get(n as usize)
        .copied()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertSeries;

    fn ws(w: &[u64]) -> WeightSeq {
        WeightSeq::new(w.to_vec()).unwrap()
    }

    #[test]
    fn partition_values() {
        assert_eq!(restricted_partition(&ws(&[2, 3]), 6), 2);
        assert_eq!(restricted_partition(&ws(&[1]), 7), 1);
        assert_eq!(restricted_partition(&ws(&[2, 3]), 1), 0);
        assert_eq!(restricted_partition(&ws(&[2, 3]), 0), 1);
    }

    #[test]
    fn partition_matches_free_series() {
        let seqs: [&[u64]; 5] = [&[1, 2, 3, 4], &[6, 5], &[2, 2, 3], &[4], &[3, 6, 1]];
        for a in seqs {
            let a = ws(a);
            let values = HilbertSeries::free(a.clone()).expand(60).values;
            for n in 0..=60 {
                assert_eq!(restricted_partition(&a, n as u64) as i128, values[n]);
            }
        }
    }

    #[test]
    fn bounded_denumerant_for_two_three() {
        let a = ws(&[2, 3]);
        let table = bounded_denumerant_table(&a);
        assert_eq!(table.len(), 8);
        let support: Vec<usize> = (0..=20)
            .filter(|&n| bounded_denumerant(&a, n as u64) != 0)
            .collect();
        assert_eq!(support, vec![0, 2, 3, 4, 5, 7]);
        assert!(support
            .iter()
            .all(|&n| bounded_denumerant(&a, n as u64) == 1));
    }

    #[test]
    fn bounded_denumerant_is_reciprocal_with_box_total() {
        let seqs: [&[u64]; 4] = [&[2, 3], &[1, 2, 4], &[2, 2, 3], &[3, 4, 5]];
        for a in seqs {
            let a = ws(a);
            let table = bounded_denumerant_table(&a);
            let total: u128 = table.iter().sum();
            let boxes: u128 = a
                .weights()
                .iter()
                .map(|&w| (a.period() / w) as u128)
                .product();
            assert_eq!(total, boxes);
            let rev: Vec<u128> = table.iter().rev().copied().collect();
            assert_eq!(rev, table);
            // the same numbers come out of (1 - t^D)^r / ∏ (1 - t^{a_i})
            let mut s = HilbertSeries::free(a.clone());
            for _ in 0..a.len() {
                s = s.regular_quotient(a.period() as usize);
            }
            let values = s.expand(table.len() + 5).values;
            for (n, v) in values.iter().enumerate() {
                assert_eq!(*v as u128, table.get(n).copied().unwrap_or(0));
            }
        }
    }
}
