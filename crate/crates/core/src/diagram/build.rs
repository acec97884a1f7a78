use super::{Cell, Diagram, DiagramError, ObjectWord, Strand};
use crate::repgraph::{Label, Path};

fn cn_strand(v: i64, n: u32) -> Strand {
    Strand::Node(Label::new(v.rem_euclid(n as i64).to_string()))
}

fn cn_value(s: &Strand, n: u32) -> Result<i64, DiagramError> {
    s.label()
        .and_then(Label::as_int)
        .filter(|v| (0..n as i64).contains(v))
        .ok_or_else(|| DiagramError::InvalidCell {
            cell: s.to_string(),
            reason: format!("not a residue mod {n}"),
        })
}

/// Sum of a word over `Z/n`, as a residue.
pub fn word_sum(word: &ObjectWord, n: u32) -> Result<i64, DiagramError> {
    let mut total = 0i64;
    for s in word.iter() {
        total += cn_value(s, n)?;
    }
    Ok(total.rem_euclid(n as i64))
}

/// Funnel along a path `(b_0, .., b_k)`: `b_0^(k+1) -> b_k`, merging the
/// generator strands in from the left one at a time, rightmost pair first.
pub fn u_path(p: &Path) -> Result<Diagram, DiagramError> {
    if p.nodes.is_empty() {
        return Err(DiagramError::InvalidPath("empty path".into()));
    }
    let g = Strand::Node(p.start().clone());
    let k = p.len();
    let source = ObjectWord::repeat(&g, k + 1);
    let mut steps = Vec::with_capacity(k);
    for i in 0..k {
        // After i merges the word is g^(k-i) followed by b_i.
        let off = k - i - 1;
        steps.push((
            off,
            Cell::merge(
                g.clone(),
                Strand::Node(p.nodes[i].clone()),
                Strand::Node(p.nodes[i + 1].clone()),
            ),
        ));
    }
    Diagram::from_steps(source, steps)
}

/// Vertical mirror of [`u_path`]: `b_k -> b_0^(k+1)`.
pub fn d_path(p: &Path) -> Result<Diagram, DiagramError> {
    Ok(u_path(p)?.mirror())
}

/// Left-nested merges of `source` down to a single strand.
fn merge_comb(source: &ObjectWord, n: u32) -> Result<Vec<(usize, Cell)>, DiagramError> {
    let mut steps = Vec::new();
    let mut acc = cn_value(&source.0[0], n)?;
    for s in &source.0[1..] {
        let b = cn_value(s, n)?;
        steps.push((0, Cell::merge(cn_strand(acc, n), s.clone(), cn_strand(acc + b, n))));
        acc = (acc + b).rem_euclid(n as i64);
    }
    Ok(steps)
}

/// Left-nested splits of a single strand into `target`: the vertical mirror
/// of the merge comb, so the first split peels off the last label.
fn split_comb(target: &ObjectWord, n: u32) -> Result<Vec<(usize, Cell)>, DiagramError> {
    let l = target.len();
    let mut prefix = Vec::with_capacity(l);
    let mut acc = 0i64;
    for s in target.iter() {
        acc = (acc + cn_value(s, n)?).rem_euclid(n as i64);
        prefix.push(acc);
    }
    let mut steps = Vec::new();
    for j in (1..l).rev() {
        steps.push((
            0,
            Cell::split(
                cn_strand(prefix[j], n),
                cn_strand(prefix[j - 1], n),
                target.0[j].clone(),
            ),
        ));
    }
    Ok(steps)
}

/// The canonical diagram `source -> target` in `C_n`: left-nested merges to
/// one strand labelled by the sum, then left-nested splits.
pub fn canonical_cn(source: &ObjectWord, target: &ObjectWord, n: u32) -> Result<Diagram, DiagramError> {
    match (source.is_empty(), target.is_empty()) {
        (true, true) => return Ok(Diagram::empty()),
        (true, false) | (false, true) => {
            return Err(DiagramError::NoDiagram {
                from: source.clone(),
                to: target.clone(),
            })
        }
        _ => {}
    }
    if word_sum(source, n)? != word_sum(target, n)? {
        return Err(DiagramError::NoDiagram {
            from: source.clone(),
            to: target.clone(),
        });
    }
    let mut steps = merge_comb(source, n)?;
    steps.extend(split_comb(target, n)?);
    Diagram::from_steps(source.clone(), steps)
}

/// Merges `source` to one strand and splits it into `1`s, one per unit of
/// the integer sum of the labels.
pub fn funnel_cn(source: &ObjectWord, n: u32) -> Result<Diagram, DiagramError> {
    if source.is_empty() {
        return Ok(Diagram::empty());
    }
    let mut total = 0i64;
    for s in source.iter() {
        total += cn_value(s, n)?;
    }
    if total == 0 {
        return Err(DiagramError::NoDiagram {
            from: source.clone(),
            to: ObjectWord::unit(),
        });
    }
    let ones = ObjectWord::repeat(&cn_strand(1, n), total as usize);
    canonical_cn(source, &ones, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[&str]) -> ObjectWord {
        ObjectWord::from_labels(s)
    }

    #[test]
    fn u_path_shapes() {
        assert_eq!(u_path(&Path::new(&["1"])).unwrap(), Diagram::identity(w(&["1"])));
        let d = u_path(&Path::new(&["1", "2"])).unwrap();
        assert_eq!(
            d,
            Diagram::cell(Cell::merge(Strand::node("1"), Strand::node("1"), Strand::node("2")))
        );
        let d = u_path(&Path::new(&["1", "0", "1", "2", "3"])).unwrap();
        assert_eq!(d.slices().len(), 4);
        assert_eq!(d.source(), &w(&["1"; 5]));
        assert_eq!(d.target(), &w(&["3"]));
        // first slice merges the two rightmost strands
        assert_eq!(
            d.slices()[0].last().unwrap(),
            &Cell::merge(Strand::node("1"), Strand::node("1"), Strand::node("0"))
        );
    }

    #[test]
    fn funnels() {
        assert_eq!(funnel_cn(&w(&["1"]), 5).unwrap(), Diagram::identity(w(&["1"])));
        let d = funnel_cn(&w(&["2"]), 5).unwrap();
        assert_eq!(
            d,
            Diagram::cell(Cell::split(Strand::node("2"), Strand::node("1"), Strand::node("1")))
        );
        let d = funnel_cn(&w(&["2", "3"]), 4).unwrap();
        assert_eq!(d.target(), &w(&["1"; 5]));
        assert_eq!(d.split_count() as i64 - d.merge_count() as i64, 3);
        assert_eq!(funnel_cn(&ObjectWord::unit(), 4).unwrap(), Diagram::empty());
    }

    #[test]
    fn canonical_requires_congruence() {
        assert!(canonical_cn(&w(&["1", "1"]), &w(&["1"]), 3).is_err());
        let d = canonical_cn(&w(&["1", "2"]), &w(&["3"]), 5).unwrap();
        assert_eq!(
            d,
            Diagram::cell(Cell::merge(Strand::node("1"), Strand::node("2"), Strand::node("3")))
        );
    }
}
