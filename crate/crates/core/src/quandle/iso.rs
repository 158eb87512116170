use super::{Quandle, QuandleError};

/// Largest order accepted by [`quandle_isomorphic`].
pub const DEFAULT_ISOMORPHISM_BOUND: usize = 24;

pub fn quandle_isomorphic(a: &Quandle, b: &Quandle) -> Result<Option<Vec<usize>>, QuandleError> {
    quandle_isomorphic_bounded(a, b, DEFAULT_ISOMORPHISM_BOUND)
}

/// Searches for an isomorphism `a → b`, returning the witness map.
///
/// Each image choice is closed under the product and right division, so a
/// connected quandle is settled by the images of a few generators. Elements
/// are only matched with elements of equal invariant (cycle type of the
/// right translation, fiber size, orbit size).
pub fn quandle_isomorphic_bounded(
    a: &Quandle,
    b: &Quandle,
    bound: usize,
) -> Result<Option<Vec<usize>>, QuandleError> {
    if a.order() > bound {
        return Err(QuandleError::TooLarge { order: a.order(), bound });
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    let (ka, kb) = (invariants(a), invariants(b));
    let mut sa = ka.clone();
    let mut sb = kb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let search = IsoSearch { a, b, ka: &ka, kb: &kb };
    let state = State { fwd: vec![usize::MAX; a.order()], bwd: vec![usize::MAX; a.order()], mapped: Vec::new() };
    Ok(search.run(state))
}

fn invariants(q: &Quandle) -> Vec<Vec<usize>> {
    let n = q.order();
    let fibers = q.fibers();
    let mut fiber_size = vec![0; n];
    for f in &fibers {
        for &x in f {
            fiber_size[x] = f.len();
        }
    }
    (0..n)
        .map(|x| {
            let mut key: Vec<usize> = q.column(x).cycles().iter().map(|c| c.len()).collect();
            key.sort_unstable();
            key.push(usize::MAX);
            key.push(fiber_size[x]);
            key.push(q.orbit(x).len());
            key.push((0..n).filter(|&y| q.op(x, y) == x).count());
            key
        })
        .collect()
}

#[derive(Clone)]
struct State {
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    mapped: Vec<usize>,
}

struct IsoSearch<'a> {
    a: &'a Quandle,
    b: &'a Quandle,
    ka: &'a [Vec<usize>],
    kb: &'a [Vec<usize>],
}

impl IsoSearch<'_> {
    fn run(&self, state: State) -> Option<Vec<usize>> {
        let Some(x) = state.fwd.iter().position(|&y| y == usize::MAX) else {
            return Some(state.fwd);
        };
        for y in 0..self.b.order() {
            if state.bwd[y] != usize::MAX || self.ka[x] != self.kb[y] {
                continue;
            }
            let mut next = state.clone();
            if self.assign(&mut next, x, y) {
                if let Some(found) = self.run(next) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn assign(&self, st: &mut State, x: usize, y: usize) -> bool {
        let mut work = vec![(x, y)];
        while let Some((u, v)) = work.pop() {
            if st.fwd[u] != usize::MAX {
                if st.fwd[u] != v {
                    return false;
                }
                continue;
            }
            if st.bwd[v] != usize::MAX || self.ka[u] != self.kb[v] {
                return false;
            }
            st.fwd[u] = v;
            st.bwd[v] = u;
            st.mapped.push(u);
            for &m in &st.mapped {
                let fm = st.fwd[m];
                work.push((self.a.op(u, m), self.b.op(v, fm)));
                work.push((self.a.op(m, u), self.b.op(fm, v)));
                work.push((self.a.star_inv(u, m), self.b.star_inv(v, fm)));
                work.push((self.a.star_inv(m, u), self.b.star_inv(fm, v)));
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_copy_is_isomorphic() {
        let q = Quandle::dihedral(5);
        let sigma = vec![3, 0, 4, 1, 2];
        let r = q.relabel(&sigma);
        let map = quandle_isomorphic(&q, &r).unwrap().unwrap();
        assert!(q.is_homomorphism_to(&r, &map));
    }

    #[test]
    fn different_quandles_are_not_isomorphic() {
        assert_eq!(quandle_isomorphic(&Quandle::dihedral(3), &Quandle::trivial(3)).unwrap(), None);
        assert_eq!(quandle_isomorphic(&Quandle::dihedral(3), &Quandle::dihedral(4)).unwrap(), None);
    }

    #[test]
    fn bound_is_enforced() {
        let q = Quandle::trivial(30);
        assert_eq!(
            quandle_isomorphic(&q, &q),
            Err(QuandleError::TooLarge { order: 30, bound: DEFAULT_ISOMORPHISM_BOUND })
        );
    }
}
