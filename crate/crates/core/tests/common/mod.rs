#![allow(dead_code)]

use arrowscope::Quiver;

pub fn matrix(q: &Quiver) -> Vec<Vec<i64>> {
    q.rows()
        .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

/// Mutation on an explicit list of arrows: add one arrow per path through k,
/// reverse arrows at k, cancel 2-cycles.
pub fn multiset_mutation(q: &Quiver, k: usize) -> Quiver {
    let n = q.order();
    let b = matrix(q);
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for _ in 0..b[i][j].max(0) {
                arrows.push((i, j));
            }
        }
    }
    let into_k: Vec<usize> = arrows.iter().filter(|a| a.1 == k).map(|a| a.0).collect();
    let out_of_k: Vec<usize> = arrows.iter().filter(|a| a.0 == k).map(|a| a.1).collect();
    let mut next: Vec<(usize, usize)> = Vec::new();
    for &i in &into_k {
        for &j in &out_of_k {
            if !(q.is_frozen(i) && q.is_frozen(j)) {
                next.push((i, j));
            }
        }
    }
    for &(i, j) in &arrows {
        if i == k || j == k {
            next.push((j, i));
        } else {
            next.push((i, j));
        }
    }
    let mut m = vec![vec![0i64; n]; n];
    for (i, j) in next {
        m[i][j] += 1;
        m[j][i] -= 1;
    }
    Quiver::from_matrix(q.n_mut(), q.n_frozen(), &m).unwrap()
}
