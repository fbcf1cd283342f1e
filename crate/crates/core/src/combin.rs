use alloc::vec::Vec;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic iterator over the `k`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: u32,
    current: Vec<u32>,
    done: bool,
}

impl Combinations {
    pub fn new(n: u32, k: u32) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }

    /// Advance in place; returns `false` after the last subset.
    fn advance(&mut self) -> bool {
        let k = self.current.len();
        let n = self.n as usize;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if (self.current[i] as usize) < n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

/// Rank of a sorted `k`-subset of `0..n` in lexicographic order.
pub(crate) fn rank_combination(n: u32, subset: &[u32]) -> u64 {
    let k = subset.len() as u64;
    let mut rank: u64 = 0;
    let mut prev: u32 = 0;
    for (i, &x) in subset.iter().enumerate() {
        let start = if i == 0 { 0 } else { prev + 1 };
        for skipped in start..x {
            let left = (n - skipped - 1) as u64;
            rank += binomial(left, k - i as u64 - 1) as u64;
        }
        prev = x;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(16, 4), 1820);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn combinations_in_order_and_ranked() {
        let all: Vec<_> = Combinations::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], [0, 1, 2]);
        assert_eq!(all[9], [2, 3, 4]);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(rank_combination(5, c), i as u64);
        }
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}
