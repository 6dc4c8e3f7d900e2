//! ASCII pictures of bi-non-crossing partitions: left nodes hang off the
//! left dashed line, right nodes off the right one, one row per position,
//! and every block is a vertical lane joining its nodes.

use bifree_core::bnc::{BncPartition, Face};

pub fn render(p: &BncPartition) -> String {
    let shape = p.shape();
    let rows = shape.len();
    let blocks = p.blocks();
    let span = |b: &Vec<usize>| b[b.len() - 1] - b[0];
    let touches = |b: &Vec<usize>, face| b.iter().any(|&x| shape.node(x).0 == face);

    // Short blocks sit next to the line they touch so nested blocks do not
    // cut through their parents.
    let mut lefts: Vec<usize> = (0..blocks.len())
        .filter(|&k| !touches(&blocks[k], Face::Right))
        .collect();
    let mut mixed: Vec<usize> = (0..blocks.len())
        .filter(|&k| touches(&blocks[k], Face::Left) && touches(&blocks[k], Face::Right))
        .collect();
    let mut rights: Vec<usize> = (0..blocks.len())
        .filter(|&k| !touches(&blocks[k], Face::Left))
        .collect();
    lefts.sort_by_key(|&k| (span(&blocks[k]), k));
    mixed.sort_by_key(|&k| (std::cmp::Reverse(span(&blocks[k])), k));
    rights.sort_by_key(|&k| (std::cmp::Reverse(span(&blocks[k])), k));
    let lanes: Vec<usize> = lefts.into_iter().chain(mixed).chain(rights).collect();

    let width = 2 * lanes.len() + 1;
    let mut out = String::new();
    for row in 1..=rows {
        let (face, _) = shape.node(row);
        let mut mid = vec![' '; width];
        for (lane, &k) in lanes.iter().enumerate() {
            let b = &blocks[k];
            let col = 2 * lane + 1;
            if b.contains(&row) {
                mid[col] = '+';
                let cols = match face {
                    Face::Left => 0..col,
                    Face::Right => col + 1..width,
                };
                for c in cols {
                    if mid[c] == ' ' {
                        mid[c] = '-';
                    }
                }
            } else if b[0] < row && row < b[b.len() - 1] {
                mid[col] = '|';
            }
        }
        let label = shape.node_label(row);
        let (left, right) = match face {
            Face::Left => (format!("{label:>3} o"), "¦".to_string()),
            Face::Right => ("    ¦".to_string(), format!("o {label}")),
        };
        let line = format!("{left}{}{right}", mid.iter().collect::<String>());
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
