#!/usr/bin/env python3
#
# chemdiv - Copyright 2026 The chemdiv Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Writes data/corpus.smi: hand-entered reference molecules plus a
deterministic scaffold x substituent enumeration."""

import itertools
import pathlib
import random

REFERENCE = [
    ("CC(=O)Oc1ccccc1C(=O)O", "aspirin"),
    ("CC(C)Cc1ccc(cc1)C(C)C(=O)O", "ibuprofen"),
    ("Cn1cnc2c1c(=O)n(C)c(=O)n2C", "caffeine"),
    ("CC(=O)Nc1ccc(O)cc1", "paracetamol"),
    ("CN1CCC[C@H]1c1cccnc1", "nicotine"),
    ("COc1ccc2[nH]cc(CCNC(C)=O)c2c1", "melatonin"),
    ("NCCc1ccc(O)c(O)c1", "dopamine"),
    ("NCCc1c[nH]c2ccc(O)cc12", "serotonin"),
    ("CN(C)CCCN1c2ccccc2CCc2ccccc21", "imipramine"),
    ("CNCCC(Oc1ccc(cc1)C(F)(F)F)c1ccccc1", "fluoxetine"),
    ("CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21", "diazepam"),
    ("OC(=O)Cc1ccccc1Nc1c(Cl)cccc1Cl", "diclofenac"),
    ("COc1ccc2cc(ccc2c1)C(C)C(=O)O", "naproxen"),
    ("CC(C)NCC(O)COc1cccc2ccccc12", "propranolol"),
    ("CC(C)NCC(O)c1ccc(O)c(CO)c1", "salbutamol"),
    ("O=C(O)c1ccccc1O", "salicylic_acid"),
    ("CCOC(=O)c1ccc(N)cc1", "benzocaine"),
    ("CCN(CC)CC(=O)Nc1c(C)cccc1C", "lidocaine"),
    ("CN1CCN(CC1)C(=O)c1ccccc1", "benzoylpiperazine"),
    ("Clc1ccc(cc1)C(c1ccccc1)N1CCNCC1", "norchlorcyclizine"),
    ("CN(C)CCOC(c1ccccc1)c1ccccc1", "diphenhydramine"),
    ("O=C1CN=C(c2ccccc2)c2cc(Cl)ccc2N1", "nordazepam"),
    ("Nc1ccc(cc1)S(N)(=O)=O", "sulfanilamide"),
    ("CC1=CC(=O)c2ccccc2C1=O", "menadione"),
    ("OCC1OC(O)C(O)C(O)C1O", "glucose"),
    ("NC(=O)c1cccnc1", "nicotinamide"),
    ("Cc1ncc(CO)c(CO)c1O", "pyridoxine"),
    ("CC(N)Cc1ccccc1", "amphetamine"),
    ("CNC(C)Cc1ccccc1", "methamphetamine"),
    ("COc1cc(CCN)cc(OC)c1OC", "mescaline"),
    ("OC(=O)CCc1ccccc1", "hydrocinnamic_acid"),
    ("O=C(O)C=Cc1ccc(O)cc1", "coumaric_acid"),
    ("O=c1ccc2ccccc2o1", "coumarin"),
    ("c1ccc2[nH]ccc2c1", "indole"),
    ("c1ccc2ncccc2c1", "quinoline"),
    ("c1ccc2c(c1)ccc1ccccc12", "phenanthrene"),
    ("C1CCNCC1", "piperidine"),
    ("C1COCCN1", "morpholine"),
    ("C1CNCCN1", "piperazine"),
    ("c1ccsc1", "thiophene"),
    ("c1ccoc1", "furan"),
    ("c1cc[nH]c1", "pyrrole"),
    ("c1cnc[nH]1", "imidazole"),
    ("c1ncncn1", "triazine"),
    ("Brc1ccccc1", "bromobenzene"),
    ("Ic1ccccc1", "iodobenzene"),
    ("FC(F)(F)c1ccccc1", "trifluorotoluene"),
    ("OB(O)c1ccccc1", "phenylboronic_acid"),
    ("COP(=O)(OC)OC", "trimethyl_phosphate"),
    ("C[N+](C)(C)CCO", "choline"),
    ("CC(=O)[O-]", "acetate"),
    ("N#Cc1ccccc1", "benzonitrile"),
    ("CC#CC", "butyne"),
    ("C=CC=C", "butadiene"),
    ("CS(C)=O", "dmso"),
    ("CC(C)(C)OC(=O)N1CCCC1", "boc_pyrrolidine"),
    ("O=C(Nc1ccccc1)c1ccccc1", "benzanilide"),
    ("CCN1CCN(CC1)c1ccc(cc1)C(=O)OC", "piperazinyl_benzoate"),
    ("O=C1NC(=O)C(N1)(c1ccccc1)c1ccccc1", "phenytoin"),
    ("CC1(C)SC2C(NC(=O)Cc3ccccc3)C(=O)N2C1C(=O)O", "penicillin_g"),
    ("CN1CCC23C4Oc5c3c(CC1C2C=CC4O)ccc5O", "morphine_flat"),
    ("COC(=O)C1C(OC(=O)c2ccccc2)CC2CCC1N2C", "cocaine_flat"),
    ("CC(C)(C)NCC(O)c1ccc(O)c(O)c1", "colterol"),
    ("Oc1ccc(cc1)C1CCNCC1", "hydroxyphenylpiperidine"),
    ("c1ccc(cc1)C1CCCCN1", "phenylpiperidine"),
    ("O=C(CCCN1CCC(O)(CC1)c1ccc(Cl)cc1)c1ccc(F)cc1", "haloperidol"),
    ("CN1CCN(CC1)C1=Nc2cc(Cl)ccc2Nc2ccccc21", "clozapine"),
    ("Fc1ccc(cc1)C(=O)CCCN1CCCCC1", "butyrophenone"),
    ("CCCN(CCC)CCc1cccc2NC(=O)Cc12", "ropinirole"),
    ("CCCNC1CCc2nc(N)sc2C1", "pramipexole"),
    ("Oc1cccc2CC(CCc12)N(CCC)CCC", "aminotetralin"),
    ("CCCN1CCC[C@@H](C1)c1cccc(O)c1", "preclamol"),
    ("COc1ccccc1N1CCN(CC1)CCCCNC(=O)c1ccccc1", "arylpiperazine_amide"),
    ("O=C1CCc2ccc(OCCCCN3CCN(CC3)c3cccc(Cl)c3Cl)cc2N1", "aripiprazole"),
    ("CCN(CC)C(=O)C1CN(C)C2Cc3c[nH]c4cccc(C2=C1)c34", "lsd_flat"),
]

PUBLISHED = [
    "CCOCCNC[C@H]1CCCN1CCc1ccsc1",
    "CCCOC[C@H]1Cc2ccccc21",
    "CC[C@H]1CCNCOc2ccccc21",
    "CC[C@H]1CCN(CCc2ccccc2)c1",
    "CCCO[C@@H]1CCN(C)Cc2ccccc21",
    "CCC[C@@H]1CCC[NH+]1CC[C@H]1CCCn1",
    "CC[C@@H]1CCN(CCc2ccccc2)c1",
    "CC[C@H]1CCN(Cc2ccccc2)c1",
    "CCOC1CCN(CCCNCCCc2ccccc2)c1",
    "CCCN1CCO[C@H]1C[C@@H]1CCOc2ccccc21",
    "Cc1ccccc1CCSc1ccccc1C",
    "CCCC(=O)CCCc1ccccc1CCCc1ccccc1C",
]

# Scaffolds with one attachment point written as {R}.
SCAFFOLDS = [
    "c1ccc(cc1){R}",
    "c1ccc(cc1)C{R}",
    "c1ccc(cc1)CC{R}",
    "c1ccc2ccccc2c1{R}",
    "c1ccncc1{R}",
    "c1ccsc1{R}",
    "c1ccoc1{R}",
    "C1CCN(CC1){R}",
    "C1CCC(CC1){R}",
    "C1COCCN1C{R}",
    "CN1CCN(CC1)C{R}",
    "c1cc[nH]c1C{R}",
    "Clc1ccc(cc1){R}",
    "Fc1ccc(cc1)C{R}",
    "COc1ccc(cc1){R}",
    "c1ccc2[nH]ccc2c1C{R}",
    "O=C1CCCN1C{R}",
    "CC(C)(C){R}",
]

SUBSTITUENTS = [
    "C(=O)O", "C(=O)N", "C(=O)OC", "C(=O)NC", "CN", "CCN", "CCO", "O",
    "OC", "N", "NC(C)=O", "S(N)(=O)=O", "C#N", "Cl", "Br", "F",
    "C(F)(F)F", "CC(=O)O", "N1CCOCC1", "N1CCCC1", "OCC(O)CO", "SC",
    "C(C)O", "NCCO", "c1ccccc1", "c1ccncc1", "CC=C", "C#C", "P(=O)(O)O",
    "NC(=O)N",
]


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    records = [(s, name) for s, name in REFERENCE]
    records += [(s, f"sample_{i + 1}") for i, s in enumerate(PUBLISHED)]
    seen = {s for s, _ in records}

    combos = list(itertools.product(range(len(SCAFFOLDS)), range(len(SUBSTITUENTS))))
    random.Random(2026).shuffle(combos)
    for i, j in combos:
        if len(records) >= 500:
            break
        smiles = SCAFFOLDS[i].replace("{R}", SUBSTITUENTS[j])
        if smiles in seen:
            continue
        seen.add(smiles)
        records.append((smiles, f"enum_{i:02d}_{j:02d}"))

    out = root / "data" / "corpus.smi"
    with out.open("w", encoding="utf-8") as fh:
        fh.write("# chemdiv bundled corpus: reference molecules and an enumerated\n")
        fh.write("# scaffold x substituent library. Regenerate with scripts/make_corpus.py.\n")
        for smiles, name in records:
            fh.write(f"{smiles}\t{name}\n")


if __name__ == "__main__":
    main()
