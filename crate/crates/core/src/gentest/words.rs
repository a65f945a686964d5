use crate::matgrp::{MatrixSpace, SquareMatrix};

/// Reduced words of length at most `max_len` in `r` generators and their
/// inverses, in length-lexicographic order.
///
/// Letter `2i` is generator `i` and letter `2i + 1` its inverse.
#[derive(Clone, Debug)]
pub struct WordIterator {
    letters: usize,
    max_len: usize,
    current: Option<Vec<usize>>,
    started: bool,
}

impl WordIterator {
    pub fn new(alphabet_size: usize, max_len: usize) -> Self {
        WordIterator {
            letters: 2 * alphabet_size,
            max_len,
            current: Some(Vec::new()),
            started: false,
        }
    }

    /// Number of reduced words of length at most `max_len`.
    pub fn ball_size(alphabet_size: usize, max_len: usize) -> u128 {
        let l = 2 * alphabet_size as u128;
        if l == 0 {
            return 1;
        }
        let mut total = 1u128;
        let mut layer = l;
        for _ in 0..max_len {
            total += layer;
            layer *= l - 1;
        }
        total
    }

    fn fill_from(&self, w: &mut [usize], start: usize) {
        for j in start..w.len() {
            w[j] = if j > 0 && w[j - 1] == 1 { 1 } else { 0 };
        }
    }

    fn advance(&self, w: &mut Vec<usize>) -> bool {
        for i in (0..w.len()).rev() {
            let mut l = w[i] + 1;
            while l < self.letters && i > 0 && l == w[i - 1] ^ 1 {
                l += 1;
            }
            if l < self.letters {
                w[i] = l;
                self.fill_from(w, i + 1);
                return true;
            }
        }
        if w.len() < self.max_len && self.letters > 0 {
            w.push(0);
            self.fill_from(w, 0);
            return true;
        }
        false
    }
}

impl Iterator for WordIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            return self.current.clone();
        }
        let mut w = self.current.take()?;
        if self.advance(&mut w) {
            self.current = Some(w.clone());
            Some(w)
        } else {
            None
        }
    }
}

/// Evaluates a word given the generators and their inverses.
pub fn eval_word(
    space: &MatrixSpace,
    gens: &[SquareMatrix],
    inverses: &[SquareMatrix],
    word: &[usize],
) -> SquareMatrix {
    word.iter().fold(space.identity(), |acc, &l| {
        let m = if l % 2 == 0 {
            &gens[l / 2]
        } else {
            &inverses[l / 2]
        };
        space.mul(&acc, m)
    })
}
