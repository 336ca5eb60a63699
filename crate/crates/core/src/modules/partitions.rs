/// Partitions of `n` with weakly decreasing parts, in reverse-lexicographic
/// order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        current.push(part);
        fill(rest - part, part, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_shape() {
        assert_eq!(
            partitions(4),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
        for n in 0..9 {
            for p in partitions(n) {
                assert_eq!(p.iter().sum::<u32>(), n);
                assert!(p.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }
}
