// scratch calibration harness (not part of the deliverable)
use sigmark_core::channel::ChannelModel;
use sigmark_core::decoder::{train, TrainConfig};
use sigmark_core::framework::*;
use sigmark_core::painting::PaintingScheme;
use sigmark_core::signature::keygen;
use sigmark_core::synth::{corpus_image_seed, synth_image};

fn main() {
    let kp = keygen(0xF1B7_0CE5).unwrap();
    let (model, _) = train(&TrainConfig::new(0.07, PaintingScheme::canonical()).with_seed(2001)).unwrap();
    let cfg = PipelineConfig::standard();
    for rate in [0.005f64, 0.01] {
        let mut passing = vec![];
        for i in 0..30 {
            let img = synth_image(corpus_image_seed(77, i), 512, 512);
            let ch = ChannelModel::simulated(rate, 0.0, 1000 + i).unwrap();
            let mut session = ch.session();
            let emb = embed_signature(&img, &kp.secret, &mut session, &cfg).unwrap();
            let rep = extract_and_verify(&emb.image, &kp.public, &session, Some(&model), &cfg).unwrap();
            if rep.verified {
                passing.push(i);
            }
        }
        println!("rate={rate}: passing indices {passing:?}");
    }
}
