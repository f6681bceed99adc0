//! The plump size over a signature: order, joins, and filteredness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sizedmu::size::{filtered_sample_check, kappa_sigma, SizeBackend};
use sizedmu::{Signature, SizeIndex};

fn main() {
    let sig = Signature::new([("leaf", 0), ("node", 2)]);
    let k = kappa_sigma(&sig);
    let SizeBackend::Plump(p) = &k else {
        unreachable!()
    };
    println!("augmented signature: {}", p.augmented());

    let zero = k.bottom();
    let one = k.succ(&zero);
    let two = k.succ(&one);
    for (a, b) in [(&zero, &one), (&one, &two), (&two, &one), (&one, &one)] {
        println!(
            "{} < {}: {}   ≤: {}",
            k.render(a),
            k.render(b),
            k.lt(a, b),
            k.leq(a, b)
        );
    }
    println!(
        "basis of {}: {:?}",
        k.render(&two),
        k.predecessor_basis(&two)
            .iter()
            .map(|i| k.render(i))
            .collect::<Vec<_>>()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<(usize, Vec<SizeIndex>)> = (0..5)
        .map(|_| {
            let kids = (0..2)
                .map(|_| SizeIndex::Plump(p.sample(&mut rng, 3)))
                .collect();
            (1, kids)
        })
        .collect();
    let report = filtered_sample_check(&k, &sig, &samples);
    println!("filtered on {} samples: {}", samples.len(), report.ok);
    for w in report.witnesses.iter().flatten() {
        println!("  bound {}", k.render(w));
    }
}
