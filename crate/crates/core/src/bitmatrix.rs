//! Square boolean matrices with word-packed rows.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / WORD] |= 1 << (j % WORD);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// Column indices of the set bits in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + t)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Boolean product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let mut out = BitMatrix::zeros(self.n);
        let words = self.words;
        if self.n == 0 {
            return out;
        }
        par_chunks_mut!(out.data, words, |(i, dst): (usize, &mut [u64])| {
            for k in self.row_ones(i) {
                for (d, s) in dst.iter_mut().zip(other.row(k)) {
                    *d |= *s;
                }
            }
        });
        out
    }

    /// `(self)^k` for a reflexive matrix, by binary exponentiation. With
    /// `self = A ∨ I` the result marks pairs joined by a walk of at most `k`
    /// edges.
    pub fn reflexive_power(&self, k: usize) -> BitMatrix {
        let mut result = BitMatrix::identity(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_ones_crosses_word_boundaries() {
        let mut m = BitMatrix::zeros(130);
        for j in [0, 63, 64, 127, 129] {
            m.set(5, j);
        }
        assert_eq!(m.row_ones(5).collect::<Vec<_>>(), vec![0, 63, 64, 127, 129]);
        assert_eq!(m.count_ones(), 5);
    }

    #[test]
    fn power_counts_walk_lengths() {
        // path 0 -> 1 -> 2 -> 3 -> 4 plus the diagonal
        let mut a = BitMatrix::identity(5);
        for i in 0..4 {
            a.set(i, i + 1);
        }
        for k in 0..6 {
            let p = a.reflexive_power(k);
            for i in 0..5 {
                for j in 0..5 {
                    assert_eq!(p.get(i, j), j >= i && j - i <= k, "k={k} ({i},{j})");
                }
            }
        }
    }
}
