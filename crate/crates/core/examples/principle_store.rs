//! Drives the principle store by hand on a 1-d model-state space with three
//! actions, printing which update branch fires at each step.
//!
//! ```bash
//! cargo run --example principle_store
//! ```

use napping::PrincipleStore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let (thre, sup) = (0.0, Some(2.0));
    let mut store = PrincipleStore::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    // (model state, baseline action, score the played action earns)
    let script = [
        (0.0, 1, -1.0),
        (0.1, 1, -1.0),
        (0.2, 1, 1.0),
        (0.1, 1, -1.0),
        (0.05, 1, -2.0),
        (5.0, 0, 2.0),
        (4.8, 2, 0.0),
    ];
    for (ms, a_agent, score) in script {
        let ms = [ms];
        let a_ap = store.select(&ms, a_agent, &mut rng).expect("valid action");
        let outcome = store
            .update_with_score(&ms, a_agent, a_ap, score, thre, sup)
            .expect("update");
        let (open, closed) = store.counts();
        println!(
            "ms={:<4} baseline={a_agent} played={a_ap} score={score:>4}  {outcome:?}  (open {open}, closed {closed})",
            ms[0]
        );
    }

    println!("\nanchors: {:?}", store.anchors());
    for (key, p) in store.principles() {
        println!(
            "  anchor {} / baseline {}: candidates {:?} tested {:?} best {:?}",
            key.anchor_id,
            key.baseline_action,
            p.candidates(),
            p.tested(),
            store.best_score(key)
        );
    }
    let json = store.to_json();
    let back = PrincipleStore::from_json(&json).expect("round trip");
    assert_eq!(back, store);
    println!("\nserialized store ({} bytes) round-trips", json.len());
}
