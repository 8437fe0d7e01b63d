use super::{GroupError, Presentation, Word};

const NONE: usize = usize::MAX;

/// Coset table built by HLT-style Todd-Coxeter enumeration with coincidence
/// processing.
struct CosetTable {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cols: usize,
    live: usize,
    limit: usize,
}

fn inv(col: usize) -> usize {
    col ^ 1
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().map(|(g, inverted)| 2 * g + usize::from(inverted)).collect()
}

impl CosetTable {
    fn new(generators: usize, limit: usize) -> Self {
        let cols = 2 * generators;
        CosetTable { table: vec![vec![NONE; cols]], parent: vec![0], cols, live: 1, limit }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), GroupError> {
        if self.table.len() >= self.limit {
            return Err(GroupError::CosetLimit { limit: self.limit });
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][x] = d;
        self.table[d][inv(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        self.live -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][inv(x)] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][inv(x)] != NONE {
                    let t = self.table[f1][inv(x)];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][inv(x)] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), GroupError> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][inv(w[j as usize])] != NONE {
                b = self.table[b][inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][inv(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`. Fails once more than `limit` cosets have been defined, which also
/// covers infinite index.
pub fn coset_index(p: &Presentation, subgroup: &[Word], limit: usize) -> Result<usize, GroupError> {
    let mut t = CosetTable::new(p.generator_count(), limit.max(1));
    let rels: Vec<Vec<usize>> = p.relators().iter().map(columns).collect();
    for h in subgroup {
        t.scan_and_fill(0, &columns(h))?;
    }
    let mut c = 0;
    while c < t.table.len() {
        for r in &rels {
            if !t.is_live(c) {
                break;
            }
            t.scan_and_fill(c, r)?;
        }
        if t.is_live(c) {
            for x in 0..t.cols {
                if t.table[c][x] == NONE {
                    t.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    Ok(t.live)
}

/// Order of the presented group, when finite and within the coset limit.
pub fn group_order(p: &Presentation, limit: usize) -> Result<usize, GroupError> {
    coset_index(p, &[], limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> usize {
        group_order(&text.parse().unwrap(), 100_000).unwrap()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order("a\na^7"), 7);
        assert_eq!(order("a b\na^2 ; b^3 ; (a b)^5"), 60);
        assert_eq!(order("a b\na^2 ; b^3 ; (a b)^4"), 24);
        assert_eq!(order("a b\na^2 ; b^2 ; (a b)^6"), 12);
        assert_eq!(order("x y\nx^2 ; y^3 ; x y x^-1 y^-1"), 6);
        assert_eq!(order("x y\nx^2 ; y^3 ; x y^-2"), 1);
    }

    #[test]
    fn infinite_group_hits_limit() {
        assert!(matches!(
            group_order(&"a\n1".parse().unwrap(), 500),
            Err(GroupError::CosetLimit { limit: 500 })
        ));
    }

    #[test]
    fn subgroup_index() {
        let p: Presentation = "a b\na^2 ; b^3 ; (a b)^5".parse().unwrap();
        let b = p.parse_word("b").unwrap();
        assert_eq!(coset_index(&p, &[b], 10_000).unwrap(), 20);
    }
}
