use super::presentation::{Generator, Presentation};
use super::word::{cyclic_reduce, Word};

/// Simplifies `p` with moves that preserve the group: drop trivial and
/// duplicate relators, reduce relators cyclically, and eliminate a generator
/// that occurs exactly once in some relator.
///
/// Returns the new presentation and, for every old generator, its expression
/// in the new generators.
pub fn tietze_simplify(p: &Presentation) -> (Presentation, Vec<Word>) {
    let n = p.generators.len();
    let mut images: Vec<Word> = (0..n).map(Word::generator).collect();
    let mut alive = vec![true; n];
    let mut relators: Vec<Word> = p.relators.clone();

    loop {
        tidy(&mut relators);
        let mut pick: Option<(usize, usize)> = None;
        for (ri, r) in relators.iter().enumerate() {
            if pick.is_some_and(|(pr, _)| relators[pr].len() <= r.len()) {
                continue;
            }
            let single = r
                .letters
                .iter()
                .map(|&(g, _)| g)
                .filter(|&g| r.occurrences(g) == 1)
                .max();
            if let Some(g) = single {
                pick = Some((ri, g));
            }
        }
        let Some((ri, g)) = pick else { break };
        let r = relators.remove(ri);
        let pos = r
            .letters
            .iter()
            .position(|&(h, _)| h == g)
            .expect("generator occurs");
        let before = Word::new(r.letters[..pos].to_vec());
        let after = Word::new(r.letters[pos + 1..].to_vec());
        // before · g^e · after = 1
        let expr = if r.letters[pos].1 > 0 {
            before.inverse().mul(&after.inverse())
        } else {
            after.mul(&before)
        };
        let mut subst: Vec<Word> = (0..n).map(Word::generator).collect();
        subst[g] = expr;
        for rel in relators.iter_mut() {
            if rel.contains_generator(g) {
                *rel = rel.substitute(&subst);
            }
        }
        for img in images.iter_mut() {
            if img.contains_generator(g) {
                *img = img.substitute(&subst);
            }
        }
        alive[g] = false;
    }

    let mut renumber = vec![usize::MAX; n];
    let mut generators: Vec<Generator> = Vec::new();
    for g in 0..n {
        if alive[g] {
            renumber[g] = generators.len();
            generators.push(p.generators[g].clone());
        }
    }
    let map = |w: &Word| Word::new(w.letters.iter().map(|&(g, e)| (renumber[g], e)).collect());
    let out = Presentation {
        generators,
        relators: relators.iter().map(map).collect(),
        base: p.base.clone(),
    };
    let dictionary = images.iter().map(map).collect();
    debug_assert_eq!(
        p.abelianization(),
        out.abelianization(),
        "simplification changed the abelianization"
    );
    (out, dictionary)
}

fn tidy(relators: &mut Vec<Word>) {
    for r in relators.iter_mut() {
        *r = cyclic_reduce(r);
    }
    relators.retain(|r| !r.is_empty());
    let mut seen = std::collections::HashSet::new();
    relators.retain(|r| seen.insert(r.clone()));
}
