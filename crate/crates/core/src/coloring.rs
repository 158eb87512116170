//! Quandle colorings of braid closures and of the 1-tangle obtained by
//! opening strand 1.
//!
//! At letter `+i` the colors `(a, c)` at positions `(i, i+1)` become
//! `(c, a * c)`; at `-i` they become `(c', a)` with `c' * a = c`. The source
//! colors of a crossing are `(a, c)` for `+i` and `(c', a)` for `-i`.

use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::extension::Cocycle;
use crate::quandle::Quandle;

const UNSET: u32 = u32::MAX;

/// Bottom colors of the braid given its top colors.
pub fn propagate(q: &Quandle, b: &BraidWord, top: &[usize]) -> Vec<usize> {
    assert_eq!(top.len(), b.strands(), "one color per strand");
    let mut c = top.to_vec();
    for &w in b.letters() {
        let i = w.unsigned_abs() as usize - 1;
        let (x, y) = (c[i], c[i + 1]);
        (c[i], c[i + 1]) = if w > 0 { (y, q.op(x, y)) } else { (q.star_inv(y, x), x) };
    }
    c
}

/// Like [`propagate`], also returning the ordered product of crossing
/// weights `φ(x, y)^{±1}` as an element of the coefficient group.
pub fn propagate_weighted(phi: &Cocycle, b: &BraidWord, top: &[usize]) -> (Vec<usize>, usize) {
    let (q, lam) = (phi.base(), phi.coefficients());
    assert_eq!(top.len(), b.strands(), "one color per strand");
    let mut c = top.to_vec();
    let mut weight = lam.identity();
    for &w in b.letters() {
        let i = w.unsigned_abs() as usize - 1;
        let (x, y) = (c[i], c[i + 1]);
        let (next, step) = if w > 0 {
            ((y, q.op(x, y)), phi.value(x, y))
        } else {
            let s = q.star_inv(y, x);
            ((s, x), lam.inv(phi.value(s, x)))
        };
        (c[i], c[i + 1]) = next;
        weight = lam.mul(weight, step);
    }
    (c, weight)
}

/// Lazy-assignment backtracking over colorings of a braid with the color
/// of top position 0 fixed.
struct Search<'a> {
    q: &'a Quandle,
    phi: Option<&'a Cocycle>,
    /// `(left position, positive)` per letter.
    letters: Vec<(usize, bool)>,
    /// Positions whose color is final after each letter.
    finishing: Vec<Vec<usize>>,
    close_first: bool,
    weights: usize,
    strands: usize,
}

struct State {
    colors: Vec<u32>,
    tops: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(q: &'a Quandle, phi: Option<&'a Cocycle>, b: &BraidWord, close_first: bool) -> Self {
        let letters: Vec<(usize, bool)> =
            b.letters().iter().map(|&w| (w.unsigned_abs() as usize - 1, w > 0)).collect();
        let mut last = vec![None; b.strands()];
        for (t, &(i, _)) in letters.iter().enumerate() {
            last[i] = Some(t);
            last[i + 1] = Some(t);
        }
        let mut finishing = vec![Vec::new(); letters.len()];
        for (p, l) in last.iter().enumerate() {
            if let Some(t) = *l {
                finishing[t].push(p);
            }
        }
        let weights = phi.map_or(1, |p| p.coefficients().order());
        Search { q, phi, letters, finishing, close_first, weights, strands: b.strands() }
    }

    fn slot(&self, color: u32, lambda: usize) -> usize {
        color as usize * self.weights + lambda
    }

    /// `out[c · L + λ]`: colorings with bottom-of-position-0 color `c` and
    /// weight `λ`.
    fn run(&self, first: usize, parallel: bool) -> Vec<u64> {
        let n = self.strands;
        let size = self.q.order() * self.weights;
        let mut st = State { colors: vec![UNSET; n], tops: vec![UNSET; n] };
        st.colors[0] = first as u32;
        st.tops[0] = first as u32;
        let branch = self.letters.iter().flat_map(|&(i, _)| [i, i + 1]).find(|&p| p != 0);
        match branch {
            Some(p) if parallel => (0..self.q.order())
                .into_par_iter()
                .map(|x| {
                    let mut st = State { colors: st.colors.clone(), tops: st.tops.clone() };
                    st.colors[p] = x as u32;
                    st.tops[p] = x as u32;
                    let mut out = vec![0u64; size];
                    self.step(0, &mut st, 0, &mut out);
                    out
                })
                .reduce(|| vec![0u64; size], add),
            _ => {
                let mut out = vec![0u64; size];
                self.step(0, &mut st, 0, &mut out);
                out
            }
        }
    }

    fn step(&self, t: usize, st: &mut State, lambda: usize, out: &mut [u64]) {
        if t == self.letters.len() {
            out[self.slot(st.colors[0], lambda)] += 1;
            return;
        }
        let (i, positive) = self.letters[t];
        for p in [i, i + 1] {
            if st.colors[p] == UNSET {
                for x in 0..self.q.order() as u32 {
                    st.colors[p] = x;
                    st.tops[p] = x;
                    self.step(t, st, lambda, out);
                }
                st.colors[p] = UNSET;
                st.tops[p] = UNSET;
                return;
            }
        }
        let (a, c) = (st.colors[i] as usize, st.colors[i + 1] as usize);
        let (left, right, source) = if positive {
            (c, self.q.op(a, c), (a, c))
        } else {
            let s = self.q.star_inv(c, a);
            (s, a, (s, a))
        };
        st.colors[i] = left as u32;
        st.colors[i + 1] = right as u32;
        let closed = self.finishing[t]
            .iter()
            .all(|&p| (p == 0 && !self.close_first) || st.colors[p] == st.tops[p]);
        if closed {
            let lambda = match self.phi {
                Some(phi) => {
                    let lam = phi.coefficients();
                    let w = phi.value(source.0, source.1);
                    lam.mul(lambda, if positive { w } else { lam.inv(w) })
                }
                None => lambda,
            };
            self.step(t + 1, st, lambda, out);
        }
        st.colors[i] = a as u32;
        st.colors[i + 1] = c as u32;
    }
}

fn add(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

/// `Col^{a, b'}(T)` for every `b'`: colorings of the tangle with top arc
/// `a`, indexed by the bottom arc color.
pub fn tangle_counts(q: &Quandle, b: &BraidWord, a: usize) -> Vec<u64> {
    Search::new(q, None, b, false).run(a, true)
}

/// Closure colorings with the arc at top position 0 colored `a`.
pub fn count_closure_colorings_from(q: &Quandle, b: &BraidWord, a: usize) -> u64 {
    Search::new(q, None, b, true).run(a, true).iter().sum()
}

/// `Col_Q(K)`. For connected `Q` this is `|Q|` times the count with one arc
/// color fixed.
pub fn count_colorings_closure(q: &Quandle, b: &BraidWord) -> u64 {
    if q.is_connected() {
        q.order() as u64 * count_closure_colorings_from(q, b, 0)
    } else {
        (0..q.order()).into_par_iter().map(|a| count_closure_colorings_from(q, b, a)).sum()
    }
}

/// Number of closure colorings with each total crossing weight, indexed by
/// coefficient-group element.
pub(crate) fn weighted_closure_counts(phi: &Cocycle, b: &BraidWord) -> Vec<u64> {
    let search = Search::new(phi.base(), Some(phi), b, true);
    let l = phi.coefficients().order();
    (0..phi.base().order())
        .into_par_iter()
        .map(|x| {
            let per = search.run(x, false);
            let mut out = vec![0u64; l];
            for (k, v) in per.into_iter().enumerate() {
                out[k % l] += v;
            }
            out
        })
        .reduce(|| vec![0u64; l], add)
}
