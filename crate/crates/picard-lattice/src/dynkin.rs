use crate::{LatticeBasis, LatticeClass, LatticeError};

/// 2 (a_i.a_j)/(a_j.a_j).
pub fn cartan_matrix(basis: &LatticeBasis, roots: &[LatticeClass]) -> Result<Vec<Vec<i64>>, LatticeError> {
    let n = roots.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let jj = basis.pair(&roots[j], &roots[j])?;
            if jj == 0 {
                return Err(LatticeError::NotSymmetric);
            }
            out[i][j] = 2 * basis.pair(&roots[i], &roots[j])? / jj;
        }
    }
    Ok(out)
}

/// Name of the simply laced affine diagram with this Cartan matrix, if any.
#[allow(clippy::needless_range_loop)]
pub fn affine_type(cartan: &[Vec<i64>]) -> Option<String> {
    let n = cartan.len();
    if n < 2 || (0..n).any(|i| cartan[i][i] != 2) {
        return None;
    }
    if n == 2 {
        return (cartan[0][1] == -2 && cartan[1][0] == -2).then(|| "A1(1)".into());
    }
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            match cartan[i][j] {
                _ if i == j => {}
                0 => {}
                -1 if cartan[j][i] == -1 => adj[i].push(j),
                _ => return None,
            }
        }
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if !connected(&adj) {
        return None;
    }
    if edges == n {
        return adj.iter().all(|a| a.len() == 2).then(|| format!("A{}(1)", n - 1));
    }
    if edges != n - 1 {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&i| adj[i].len() >= 3).collect();
    let arms = |b: usize| -> Vec<usize> {
        let mut lens: Vec<usize> = adj[b]
            .iter()
            .map(|&start| {
                let (mut prev, mut cur, mut len) = (b, start, 1);
                while adj[cur].len() == 2 {
                    let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                    (prev, cur, len) = (cur, next, len + 1);
                }
                if adj[cur].len() == 1 {
                    len
                } else {
                    0
                }
            })
            .collect();
        lens.sort_unstable();
        lens
    };
    match branch.as_slice() {
        [b] if adj[*b].len() == 4 && n == 5 => Some("D4(1)".into()),
        [b] if adj[*b].len() == 3 => match arms(*b).as_slice() {
            [2, 2, 2] => Some("E6(1)".into()),
            [1, 3, 3] => Some("E7(1)".into()),
            [1, 2, 5] => Some("E8(1)".into()),
            _ => None,
        },
        [b1, b2] if adj[*b1].len() == 3 && adj[*b2].len() == 3 => {
            let leaves = |b: usize| adj[b].iter().filter(|&&k| adj[k].len() == 1).count();
            (leaves(*b1) >= 2 && leaves(*b2) >= 2).then(|| format!("D{}(1)", n - 1))
        }
        _ => None,
    }
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

#[cfg(test)]
mod tests {
    use super::affine_type;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in edges {
            c[a][b] = -1;
            c[b][a] = -1;
        }
        c
    }

    #[test]
    fn classifies_known_diagrams() {
        assert_eq!(
            affine_type(&from_edges(3, &[(0, 1), (1, 2), (2, 0)])).as_deref(),
            Some("A2(1)")
        );
        assert_eq!(
            affine_type(&from_edges(5, &[(0, 2), (1, 2), (3, 2), (4, 2)])).as_deref(),
            Some("D4(1)")
        );
        assert_eq!(
            affine_type(&from_edges(6, &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)])).as_deref(),
            Some("D5(1)")
        );
        let e6 = from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]);
        assert_eq!(affine_type(&e6).as_deref(), Some("E6(1)"));
        // finite A3 is not affine
        assert_eq!(affine_type(&from_edges(3, &[(0, 1), (1, 2)])), None);
    }
}
