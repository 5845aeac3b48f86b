"""Regenerate the bundled sample KB and task-oriented corpus.

    python scripts/make_sample_data.py src/clinabbrev/data/sample

Output is deterministic for a given --seed.
"""

import argparse
from pathlib import Path

import numpy as np

# abbrev -> (clinical-sense topic words, [(expansion, rating, topic words)])
SENSES = {
    "OD": [
        ("out-of-date", 42, "expired label pharmacy shelf expiration inventory discard stock outdated batch"),
        ("other diseases", 35, "comorbid unrelated registry classification category coding miscellaneous grouping index"),
        ("on duty", 30, "shift roster schedule staff night rota attending overtime pager handoff"),
        ("once daily", 26, "dosing tablet morning regimen prescription dose pill scheduled bedtime adherence"),
        ("optometry degree", 21, "school curriculum graduate university lenses licensure eyeglasses students program accredited"),
        ("organ donation", 17, "donor transplant consent procurement registry recipient kidney liver allocation brain-death"),
        ("overdose", 12, "opioid naloxone heroin unresponsive ingestion toxicology fentanyl intentional narcan pinpoint"),
        ("optic disc", 9, "fundoscopy retina papilledema cup nerve fundus ophthalmoscope swelling glaucoma pallor"),
        ("osteochondritis dissecans", 5, "cartilage knee joint lesion adolescent fragment arthroscopy subchondral bone athletes"),
    ],
    "CHF": [
        ("congestive heart failure", 50, "edema furosemide diuresis orthopnea ejection bnp crackles jvd volume overload"),
        ("chronic heart failure", 7, "outpatient clinic longterm registry quality-of-life rehabilitation follow-up telemonitoring trial cohort"),
        ("chronic hepatic failure", 4, "cirrhosis ascites jaundice bilirubin encephalopathy varices albumin coagulopathy hepatology portal"),
    ],
    "MICU": [
        ("medical intensive care unit", 30, "intubated pressors ventilator sepsis admitted critical vasopressors airway sedation icu"),
        ("mobile intensive care unit", 12, "ambulance paramedic transport prehospital vehicle dispatch field crew helicopter retrieval"),
        ("multidisciplinary intensive care unit", 4, "team rounds nursing pharmacist collaboration consultants staffing model workflow protocol"),
    ],
    "STAT": [
        ("statistic", 60, "mean variance sample estimate probability hypothesis dataset distribution regression survey"),
        ("immediately", 25, "urgent emergent now order page rapid bedside stat-order priority response"),
        ("signal transducer and activator of transcription", 15, "protein phosphorylation cytokine pathway gene kinase receptor nuclear dimer janus"),
    ],
    "RF": [
        ("rheumatoid factor", 40, "arthritis antibody serology autoimmune joints titer rheumatology synovitis igm seropositive"),
        ("radio frequency", 30, "ablation waves signal antenna energy catheter wireless spectrum electrode emitter"),
        ("respiratory failure", 20, "hypoxemia hypercapnia intubation ventilator abg bipap tachypnea desaturation oxygen work-of-breathing"),
        ("renal failure", 10, "creatinine dialysis oliguria uremia potassium nephrology anuria kidney fluid urine"),
    ],
    "AKI": [
        ("acute kidney injury", 30, "creatinine oliguria nephrotoxic dialysis urine contrast prerenal nephrology potassium hydration"),
        ("acute knee injury", 6, "ligament sprain meniscus sports swelling orthopedic tear mri crutches twisting"),
    ],
    "TTE": [
        ("transthoracic echocardiogram", 25, "ultrasound ejection valve ventricle wall-motion pericardial effusion cardiology probe doppler"),
        ("time to event", 10, "survival censoring kaplan hazard analysis endpoint follow-up cox curve median"),
    ],
    "CTA": [
        ("computed tomography angiography", 25, "contrast scan vessels embolism dissection aneurysm radiology imaging arterial filling"),
        ("clear to auscultation", 20, "lungs breath sounds bilaterally wheezes rales rhonchi chest exam stethoscope"),
        ("call to action", 8, "campaign message marketing advocacy public appeal slogan outreach audience engagement"),
    ],
    "RVS": [
        ("relative value scale", 18, "billing reimbursement payment codes physician fee medicare units schedule coding"),
        ("right ventricular strain", 9, "echo dilation septal pulmonary embolism troponin pressure overload tricuspid mcconnell"),
    ],
    "C": [
        ("consistent", 10, "compatible suggests finding picture concordant typical keeping agrees findings supports"),
        ("celsius", 8, "temperature degrees thermometer febrile scale reading measured heat chart centigrade"),
    ],
    "W": [
        ("with", 12, "along together plus accompanied including alongside having concomitant combined associated"),
        ("watt", 4, "power energy electrical joule current voltage unit device output circuit"),
    ],
}

# clinical sense used in the ICU notes for each abbreviation
NOTE_SENSE = {
    "OD": "overdose", "CHF": "congestive heart failure", "MICU": "medical intensive care unit",
    "STAT": "immediately", "RF": "respiratory failure", "AKI": "acute kidney injury",
    "TTE": "transthoracic echocardiogram", "CTA": "computed tomography angiography",
    "RVS": "right ventricular strain", "C": "consistent", "W": "with",
}

ARTICLE_TEMPLATES = [
    "{p} is associated with {a} and {b} .",
    "patients with {p} often present with {a} , {b} and {c} .",
    "the management of {p} includes {a} and {b} .",
    "{a} and {b} are typical features of {p} .",
    "in {p} , {a} is frequently accompanied by {b} .",
    "reports describe {p} in the setting of {a} , {b} or {c} .",
]

NOTE_TEMPLATES = [
    "pt admitted for {x} , {a} and {b} noted , {c} .",
    "{a} on arrival , {x} suspected , {b} and {c} .",
    "history of {x} with {a} , now {b} .",
    "{x} - {a} , {b} , plan {c} .",
    "concern for {x} given {a} and {b} .",
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--seed", type=int, default=13)
    ap.add_argument("--article-sentences", type=int, default=60)
    ap.add_argument("--note-sentences", type=int, default=60)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)

    kb_lines = ["# abbrev\texpansion\trating"]
    articles = []
    topics = {}
    for abbrev, cands in SENSES.items():
        for phrase, rating, words in cands:
            kb_lines.append(f"{abbrev}\t{phrase}\t{rating}")
            topic = words.split()
            topics[(abbrev, phrase)] = topic
            sents = []
            for _ in range(args.article_sentences):
                a, b, c = rng.choice(topic, 3, replace=False)
                sents.append(rng.choice(ARTICLE_TEMPLATES).format(p=phrase, a=a, b=b, c=c))
            articles.append(" ".join(sents))

    notes = []
    for abbrev, phrase in NOTE_SENSE.items():
        topic = topics[(abbrev, phrase)]
        surface = abbrev if len(abbrev) > 1 else None
        for _ in range(args.note_sentences if surface else 0):
            a, b, c = rng.choice(topic, 3, replace=False)
            notes.append(rng.choice(NOTE_TEMPLATES).format(x=surface, a=a, b=b, c=c))
    # single-letter components only occur inside compounds such as c/w
    for _ in range(args.note_sentences):
        a, b = rng.choice(topics[("C", "consistent")], 2, replace=False)
        d, e = rng.choice(topics[("W", "with")], 2, replace=False)
        notes.append(f"exam {a} c/w {b} , {d} {e} .")
    order = rng.permutation(len(notes))
    notes = [notes[i] for i in order]

    (out / "kb.tsv").write_text("\n".join(kb_lines) + "\n", encoding="utf-8")
    (out / "notes.txt").write_text("\n".join(notes) + "\n", encoding="utf-8")
    (out / "articles.txt").write_text("\n".join(articles) + "\n", encoding="utf-8")
    (out / "manifest.tsv").write_text(
        "# path\tsource_kind\nnotes.txt\tclinical_note\narticles.txt\tcandidate_article\n", encoding="utf-8"
    )


if __name__ == "__main__":
    main()
