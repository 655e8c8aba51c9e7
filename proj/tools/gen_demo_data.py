#!/usr/bin/env python3
"""Generate the synthetic demo knowledge graph, lexicon, vignettes and panel.

Output is deterministic for a given seed:

    python3 tools/gen_demo_data.py --out data
"""

import argparse
import json
import random
import re
from collections import defaultdict
from pathlib import Path

SPECIALTIES = [
    "Medicine / General Physician",
    "Cardiology",
    "Neuromedicine",
    "Gastroenterology",
    "Rheumatology",
    "Respiratory / Chest Disease",
    "Nephrology",
    "Diabetes / Endocrinology",
    "ENT",
    "Hepatology",
    "Haematology",
    "Dermatology",
    "Gynaecology & Obstetrics",
    "Urology",
    "Ophthalmology",
    "Orthopaedics",
    "Dentistry",
    "Infectious Disease",
]

# Vignettes per specialty (sums to 185).
CASES_PER_SPECIALTY = {
    "Medicine / General Physician": 34,
    "Cardiology": 14,
    "Neuromedicine": 13,
    "Gastroenterology": 13,
    "Rheumatology": 11,
    "Respiratory / Chest Disease": 13,
    "Nephrology": 8,
    "Diabetes / Endocrinology": 10,
    "ENT": 8,
    "Hepatology": 8,
    "Haematology": 7,
    "Dermatology": 9,
    "Gynaecology & Obstetrics": 10,
    "Urology": 7,
    "Ophthalmology": 5,
    "Orthopaedics": 7,
    "Dentistry": 4,
    "Infectious Disease": 4,
}

FATIGUE = "unexplained fatigue"

# name, parent term (None: own name), specialty, prior, symptoms {name: weight},
# drugs [(name, weight)], procedures [(name, weight)]
DISEASES = [
    # Medicine / General Physician
    ("Common cold", None, "Medicine / General Physician", 0.060,
     {"runny nose": 0.9, "sneezing": 0.8, "sore throat": 0.6, "nasal congestion": 0.8, "mild fever": 0.4,
      "cough": 0.5, "headache": 0.3, "watery eyes": 0.4},
     [("Paracetamol 500mg", 0.8), ("Cetirizine 10mg", 0.7)], [("Complete blood count", 0.3)]),
    ("Viral fever", None, "Medicine / General Physician", 0.060,
     {"fever": 0.95, "body ache": 0.8, "headache": 0.6, "chills": 0.6, FATIGUE: 0.6, "loss of appetite": 0.5,
      "mild fever": 0.3, "sore throat": 0.3},
     [("Paracetamol 500mg", 0.9), ("Oral rehydration salts", 0.5)], [("Complete blood count", 0.7), ("Urine routine examination", 0.3)]),
    ("Vitamin D deficiency", None, "Medicine / General Physician", 0.030,
     {FATIGUE: 0.8, "bone pain": 0.6, "muscle weakness": 0.6, "muscle cramps": 0.5, "low mood": 0.4,
      "generalised weakness": 0.5, "lower back pain": 0.3},
     [("Cholecalciferol 40000 IU", 0.9), ("Calcium carbonate 500mg", 0.6)], [("Serum 25-hydroxy vitamin D", 0.9), ("Serum calcium", 0.5)]),
    ("Acute gastroenteritis", "Gastroenteritis", "Medicine / General Physician", 0.050,
     {"diarrhoea": 0.9, "vomiting": 0.7, "abdominal cramps": 0.7, "nausea": 0.7, "mild fever": 0.4,
      "dehydration": 0.5, "loss of appetite": 0.4, FATIGUE: 0.3},
     [("Oral rehydration salts", 0.9), ("Zinc sulphate 20mg", 0.6), ("Ondansetron 8mg", 0.5)],
     [("Stool routine examination", 0.7), ("Serum electrolytes", 0.5)]),
    # Cardiology
    ("Hypertension", None, "Cardiology", 0.050,
     {"headache": 0.5, "dizziness": 0.5, "blurred vision": 0.3, "racing heartbeat": 0.3, "neck stiffness": 0.3,
      "nosebleed": 0.2, FATIGUE: 0.3, "chest tightness": 0.2},
     [("Amlodipine 5mg", 0.9), ("Losartan 50mg", 0.8)], [("Blood pressure monitoring", 0.9), ("Electrocardiogram", 0.6), ("Serum creatinine", 0.5)]),
    ("Angina", None, "Cardiology", 0.020,
     {"chest pain": 0.9, "chest tightness": 0.8, "pain radiating to left arm": 0.6, "shortness of breath": 0.5,
      "sweating": 0.4, "pain on exertion": 0.8, "nausea": 0.2, FATIGUE: 0.3},
     [("Glyceryl trinitrate spray", 0.9), ("Aspirin 75mg", 0.8), ("Atorvastatin 20mg", 0.7)],
     [("Electrocardiogram", 0.9), ("Exercise tolerance test", 0.7), ("Lipid profile", 0.6)]),
    ("Heart failure", None, "Cardiology", 0.015,
     {"shortness of breath": 0.9, "swollen legs": 0.8, "breathlessness lying flat": 0.7, FATIGUE: 0.7,
      "waking up breathless at night": 0.6, "racing heartbeat": 0.4, "weight gain": 0.4, "cough": 0.3},
     [("Furosemide 40mg", 0.9), ("Bisoprolol 2.5mg", 0.7), ("Ramipril 2.5mg", 0.7)],
     [("Echocardiogram", 0.9), ("Chest X-ray", 0.7), ("NT-proBNP", 0.6)]),
    ("Myocardial infarction", None, "Cardiology", 0.010,
     {"chest pain": 0.95, "pain radiating to left arm": 0.7, "sweating": 0.8, "shortness of breath": 0.6,
      "nausea": 0.5, "vomiting": 0.3, "dizziness": 0.4, "chest tightness": 0.6},
     [("Aspirin 300mg", 0.9), ("Clopidogrel 75mg", 0.8), ("Atorvastatin 80mg", 0.7)],
     [("Electrocardiogram", 0.95), ("Serum troponin", 0.9), ("Coronary angiogram", 0.6)]),
    ("Atrial fibrillation", None, "Cardiology", 0.012,
     {"racing heartbeat": 0.9, "irregular heartbeat": 0.9, "dizziness": 0.5, "shortness of breath": 0.5,
      FATIGUE: 0.5, "chest tightness": 0.3, "fainting": 0.2},
     [("Bisoprolol 2.5mg", 0.8), ("Apixaban 5mg", 0.8)], [("Electrocardiogram", 0.9), ("Holter monitoring", 0.7), ("Echocardiogram", 0.5)]),
    # Neuromedicine
    ("Migraine", None, "Neuromedicine", 0.040,
     {"headache": 0.9, "one-sided headache": 0.8, "throbbing headache": 0.8, "nausea": 0.6, "sensitivity to light": 0.7,
      "sensitivity to sound": 0.5, "visual aura": 0.3, "vomiting": 0.3},
     [("Sumatriptan 50mg", 0.8), ("Naproxen 500mg", 0.6), ("Propranolol 40mg", 0.5)], [("Neurological examination", 0.6)]),
    ("Tension headache", None, "Neuromedicine", 0.040,
     {"headache": 0.9, "band-like headache": 0.8, "neck stiffness": 0.5, "neck pain": 0.4, "difficulty sleeping": 0.4,
      "low mood": 0.2, FATIGUE: 0.3},
     [("Paracetamol 500mg", 0.8), ("Amitriptyline 10mg", 0.5)], [("Neurological examination", 0.5)]),
    ("Stroke", None, "Neuromedicine", 0.008,
     {"sudden weakness on one side": 0.9, "facial droop": 0.8, "slurred speech": 0.8, "numbness": 0.5,
      "headache": 0.3, "dizziness": 0.4, "blurred vision": 0.3, "confusion": 0.4},
     [("Aspirin 300mg", 0.8), ("Atorvastatin 80mg", 0.6)], [("CT scan of head", 0.95), ("MRI of brain", 0.7), ("Carotid doppler", 0.5)]),
    ("Epilepsy", None, "Neuromedicine", 0.010,
     {"seizures": 0.95, "loss of consciousness": 0.7, "confusion": 0.5, "tongue biting": 0.5, "muscle jerking": 0.6,
      "staring spells": 0.4, "headache": 0.2},
     [("Sodium valproate 200mg", 0.8), ("Levetiracetam 500mg", 0.8)], [("Electroencephalogram", 0.9), ("MRI of brain", 0.7)]),
    ("Peripheral neuropathy", None, "Neuromedicine", 0.015,
     {"numbness": 0.9, "tingling in hands and feet": 0.9, "burning feet": 0.7, "muscle weakness": 0.4,
      "loss of balance": 0.4, "muscle cramps": 0.3},
     [("Pregabalin 75mg", 0.8), ("Methylcobalamin 500mcg", 0.7)], [("Nerve conduction study", 0.8), ("Fasting blood sugar", 0.6), ("Serum vitamin B12", 0.5)]),
    ("Benign paroxysmal positional vertigo", "Vertigo", "Neuromedicine", 0.015,
     {"dizziness": 0.8, "spinning sensation": 0.9, "nausea": 0.5, "loss of balance": 0.6, "vomiting": 0.3,
      "dizziness on head movement": 0.8},
     [("Betahistine 16mg", 0.8), ("Cinnarizine 25mg", 0.6)], [("Dix-Hallpike test", 0.9)]),
    # Gastroenterology
    ("Acute gastritis", "Gastritis", "Gastroenterology", 0.040,
     {"upper abdominal pain": 0.8, "nausea": 0.6, "vomiting": 0.4, "bloating": 0.5, "heartburn": 0.4,
      "loss of appetite": 0.5, "indigestion": 0.6},
     [("Omeprazole 20mg", 0.9), ("Antacid suspension", 0.6)], [("Upper GI endoscopy", 0.5), ("H. pylori stool antigen", 0.5)]),
    ("Chronic gastritis", "Gastritis", "Gastroenterology", 0.025,
     {"upper abdominal pain": 0.7, "indigestion": 0.8, "bloating": 0.6, "early fullness": 0.5, "nausea": 0.4,
      "loss of appetite": 0.3, FATIGUE: 0.2},
     [("Omeprazole 20mg", 0.8), ("Domperidone 10mg", 0.5)], [("Upper GI endoscopy", 0.8), ("H. pylori stool antigen", 0.6)]),
    ("Peptic ulcer disease", None, "Gastroenterology", 0.020,
     {"upper abdominal pain": 0.9, "pain relieved by eating": 0.6, "night-time abdominal pain": 0.6, "heartburn": 0.4,
      "nausea": 0.4, "black stools": 0.3, "vomiting": 0.2, "bloating": 0.3},
     [("Omeprazole 40mg", 0.9), ("Clarithromycin 500mg", 0.6), ("Amoxicillin 1g", 0.6)],
     [("Upper GI endoscopy", 0.9), ("H. pylori stool antigen", 0.7)]),
    ("Gastro-oesophageal reflux disease", None, "Gastroenterology", 0.035,
     {"heartburn": 0.9, "sour taste in mouth": 0.8, "regurgitation": 0.7, "chest discomfort after meals": 0.5,
      "hoarse voice": 0.2, "cough": 0.2, "difficulty swallowing": 0.2},
     [("Esomeprazole 20mg", 0.9), ("Alginate suspension", 0.6)], [("Upper GI endoscopy", 0.6)]),
    ("Irritable bowel syndrome", None, "Gastroenterology", 0.030,
     {"abdominal cramps": 0.8, "bloating": 0.8, "alternating bowel habit": 0.8, "diarrhoea": 0.5, "constipation": 0.5,
      "mucus in stool": 0.4, FATIGUE: 0.3},
     [("Mebeverine 135mg", 0.8), ("Ispaghula husk", 0.6)], [("Stool routine examination", 0.5), ("Colonoscopy", 0.3)]),
    ("Haemorrhoids", None, "Gastroenterology", 0.020,
     {"bright red blood after defecation": 0.9, "anal itching": 0.6, "anal pain": 0.6, "lump near anus": 0.6,
      "constipation": 0.6, "mucus in stool": 0.2},
     [("Lactulose syrup", 0.7), ("Hydrocortisone rectal ointment", 0.7)], [("Proctoscopy", 0.9)]),
    # Rheumatology
    ("Rheumatoid arthritis", None, "Rheumatology", 0.020,
     {"joint pain": 0.9, "morning stiffness": 0.9, "swollen joints": 0.8, "pain in small joints of hands": 0.8,
      FATIGUE: 0.6, "mild fever": 0.2, "loss of appetite": 0.2, "joint deformity": 0.3},
     [("Methotrexate 7.5mg", 0.9), ("Folic acid 5mg", 0.7), ("Naproxen 500mg", 0.6)],
     [("Rheumatoid factor", 0.9), ("Anti-CCP antibody", 0.8), ("ESR", 0.6)]),
    ("Gout", None, "Rheumatology", 0.020,
     {"sudden severe joint pain": 0.9, "big toe pain": 0.8, "swollen joints": 0.7, "red hot joint": 0.8,
      "joint pain": 0.6, "mild fever": 0.2},
     [("Colchicine 0.5mg", 0.8), ("Allopurinol 100mg", 0.7), ("Naproxen 500mg", 0.6)], [("Serum uric acid", 0.9), ("Joint aspiration", 0.4)]),
    ("Systemic lupus erythematosus", None, "Rheumatology", 0.006,
     {"butterfly facial rash": 0.8, "joint pain": 0.8, FATIGUE: 0.8, "mouth ulcers": 0.5, "hair loss": 0.5,
      "sensitivity to light": 0.4, "mild fever": 0.5, "swollen legs": 0.2},
     [("Hydroxychloroquine 200mg", 0.9), ("Prednisolone 10mg", 0.6)], [("Antinuclear antibody", 0.9), ("Anti-dsDNA antibody", 0.7), ("Complete blood count", 0.5)]),
    # Respiratory / Chest Disease
    ("Asthma", None, "Respiratory / Chest Disease", 0.040,
     {"wheezing": 0.9, "shortness of breath": 0.8, "chest tightness": 0.7, "cough": 0.7, "night-time cough": 0.6,
      "breathlessness on exertion": 0.5},
     [("Salbutamol inhaler 100mcg", 0.9), ("Budesonide inhaler 200mcg", 0.7), ("Montelukast Sodium 10mg", 0.6)],
     [("Spirometry", 0.9), ("Peak flow measurement", 0.7), ("Chest X-ray", 0.4)]),
    ("Chronic obstructive pulmonary disease", "COPD", "Respiratory / Chest Disease", 0.025,
     {"shortness of breath": 0.9, "productive cough": 0.8, "wheezing": 0.6, "breathlessness on exertion": 0.8,
      "chest tightness": 0.4, FATIGUE: 0.4, "frequent chest infections": 0.5, "cough": 0.6},
     [("Tiotropium inhaler 18mcg", 0.8), ("Salbutamol inhaler 100mcg", 0.7)], [("Spirometry", 0.9), ("Chest X-ray", 0.7)]),
    ("Pneumonia", None, "Respiratory / Chest Disease", 0.020,
     {"fever": 0.9, "productive cough": 0.8, "shortness of breath": 0.6, "chest pain on breathing": 0.6, "chills": 0.6,
      "cough": 0.7, FATIGUE: 0.4, "rapid breathing": 0.4},
     [("Amoxicillin 500mg", 0.8), ("Azithromycin 500mg", 0.7), ("Paracetamol 500mg", 0.5)],
     [("Chest X-ray", 0.95), ("Complete blood count", 0.7), ("Sputum culture", 0.5)]),
    ("Acute bronchitis", "Bronchitis", "Respiratory / Chest Disease", 0.035,
     {"cough": 0.9, "productive cough": 0.7, "chest discomfort": 0.5, "mild fever": 0.4, "sore throat": 0.4,
      "wheezing": 0.3, FATIGUE: 0.3},
     [("Paracetamol 500mg", 0.6), ("Dextromethorphan syrup", 0.5)], [("Chest X-ray", 0.4)]),
    ("Pulmonary tuberculosis", "Tuberculosis", "Respiratory / Chest Disease", 0.015,
     {"chronic cough": 0.9, "coughing up blood": 0.5, "night sweats": 0.7, "weight loss": 0.7, "evening fever": 0.7,
      "loss of appetite": 0.6, FATIGUE: 0.6, "chest pain on breathing": 0.3},
     [("Rifampicin 600mg", 0.9), ("Isoniazid 300mg", 0.9), ("Pyrazinamide 1500mg", 0.8)],
     [("Sputum for acid-fast bacilli", 0.9), ("Chest X-ray", 0.8), ("Mantoux test", 0.6)]),
    # Nephrology
    ("Chronic kidney disease", "Kidney disease", "Nephrology", 0.015,
     {"swollen legs": 0.7, "puffy eyes": 0.6, FATIGUE: 0.7, "reduced urine output": 0.5, "foamy urine": 0.5,
      "itching": 0.4, "loss of appetite": 0.5, "nausea": 0.4, "shortness of breath": 0.3},
     [("Furosemide 40mg", 0.6), ("Sodium bicarbonate 500mg", 0.5), ("Erythropoietin injection", 0.4)],
     [("Serum creatinine", 0.95), ("Urine albumin-creatinine ratio", 0.8), ("Kidney ultrasound", 0.7)]),
    ("Acute kidney injury", "Kidney disease", "Nephrology", 0.006,
     {"reduced urine output": 0.9, "swollen legs": 0.5, "nausea": 0.5, "confusion": 0.3, FATIGUE: 0.5,
      "dehydration": 0.4, "shortness of breath": 0.3},
     [("Intravenous normal saline", 0.7)], [("Serum creatinine", 0.95), ("Serum electrolytes", 0.8), ("Kidney ultrasound", 0.6)]),
    ("Nephrotic syndrome", None, "Nephrology", 0.005,
     {"puffy eyes": 0.9, "swollen legs": 0.8, "foamy urine": 0.8, "weight gain": 0.5, FATIGUE: 0.4,
      "abdominal swelling": 0.4, "loss of appetite": 0.3},
     [("Prednisolone 40mg", 0.8), ("Furosemide 40mg", 0.6)], [("Urine protein 24-hour", 0.9), ("Serum albumin", 0.8), ("Lipid profile", 0.5)]),
    # Diabetes / Endocrinology
    ("Type 2 diabetes mellitus", "Diabetes mellitus", "Diabetes / Endocrinology", 0.050,
     {"excessive thirst": 0.8, "frequent urination": 0.8, "increased hunger": 0.5, "weight loss": 0.4, FATIGUE: 0.6,
      "blurred vision": 0.3, "slow healing wounds": 0.4, "tingling in hands and feet": 0.3},
     [("Metformin 500mg", 0.9), ("Gliclazide 80mg", 0.6)], [("Fasting blood sugar", 0.9), ("HbA1c", 0.9), ("Urine routine examination", 0.4)]),
    ("Hypothyroidism", "Thyroid disease", "Diabetes / Endocrinology", 0.025,
     {FATIGUE: 0.8, "weight gain": 0.7, "feeling cold": 0.7, "constipation": 0.5, "dry skin": 0.6, "hair loss": 0.5,
      "low mood": 0.4, "puffy face": 0.4, "heavy periods": 0.3},
     [("Levothyroxine 50mcg", 0.95)], [("Thyroid function test", 0.95)]),
    ("Hyperthyroidism", "Thyroid disease", "Diabetes / Endocrinology", 0.012,
     {"weight loss": 0.8, "racing heartbeat": 0.8, "heat intolerance": 0.7, "tremor": 0.7, "sweating": 0.6,
      "anxiety": 0.5, "neck swelling": 0.5, "increased hunger": 0.4, "diarrhoea": 0.2},
     [("Carbimazole 10mg", 0.9), ("Propranolol 40mg", 0.6)], [("Thyroid function test", 0.95), ("Thyroid ultrasound", 0.5)]),
    # ENT
    ("Acute sinusitis", "Sinusitis", "ENT", 0.030,
     {"facial pain": 0.8, "nasal congestion": 0.8, "thick nasal discharge": 0.8, "headache": 0.5, "reduced sense of smell": 0.5,
      "mild fever": 0.3, "cough": 0.3},
     [("Amoxicillin 500mg", 0.6), ("Xylometazoline nasal spray", 0.6), ("Paracetamol 500mg", 0.5)], [("X-ray paranasal sinuses", 0.5)]),
    ("Tonsillitis", None, "ENT", 0.030,
     {"sore throat": 0.95, "painful swallowing": 0.8, "fever": 0.7, "swollen neck glands": 0.6, "bad breath": 0.3,
      "hoarse voice": 0.3, "ear pain": 0.2},
     [("Phenoxymethylpenicillin 250mg", 0.8), ("Paracetamol 500mg", 0.7)], [("Throat swab culture", 0.6), ("Complete blood count", 0.4)]),
    ("Otitis media", None, "ENT", 0.020,
     {"ear pain": 0.9, "ear discharge": 0.5, "reduced hearing": 0.6, "fever": 0.5, "feeling of fullness in ear": 0.6,
      "dizziness": 0.2},
     [("Amoxicillin 500mg", 0.8), ("Paracetamol 500mg", 0.6)], [("Otoscopy", 0.9)]),
    ("Allergic rhinitis", None, "ENT", 0.035,
     {"sneezing": 0.9, "runny nose": 0.8, "itchy nose": 0.7, "nasal congestion": 0.7, "watery eyes": 0.6, "itchy eyes": 0.5,
      "cough": 0.2},
     [("Cetirizine 10mg", 0.8), ("Fluticasone nasal spray", 0.7)], [("Serum IgE", 0.4), ("Skin prick test", 0.4)]),
    # Hepatology
    ("Hepatitis A", "Hepatitis", "Hepatology", 0.015,
     {"yellow eyes": 0.9, "dark urine": 0.8, "loss of appetite": 0.7, "nausea": 0.6, "mild fever": 0.5,
      "upper right abdominal pain": 0.5, FATIGUE: 0.5, "pale stools": 0.3},
     [("Oral rehydration salts", 0.4), ("Ursodeoxycholic acid 300mg", 0.4)], [("Liver function test", 0.95), ("Anti-HAV IgM", 0.8)]),
    ("Hepatitis B", "Hepatitis", "Hepatology", 0.010,
     {"yellow eyes": 0.6, FATIGUE: 0.7, "loss of appetite": 0.6, "upper right abdominal pain": 0.5, "dark urine": 0.5,
      "nausea": 0.4, "joint pain": 0.3, "mild fever": 0.3},
     [("Tenofovir 300mg", 0.8)], [("HBsAg", 0.95), ("Liver function test", 0.9), ("HBV DNA", 0.6)]),
    ("Fatty liver disease", "Liver disease", "Hepatology", 0.030,
     {"upper right abdominal discomfort": 0.6, FATIGUE: 0.5, "weight gain": 0.4, "bloating": 0.3, "indigestion": 0.3,
      "loss of appetite": 0.2},
     [("Vitamin E 400 IU", 0.5), ("Metformin 500mg", 0.3)], [("Abdominal ultrasound", 0.9), ("Liver function test", 0.8), ("Lipid profile", 0.6)]),
    ("Cirrhosis", "Liver disease", "Hepatology", 0.006,
     {"abdominal swelling": 0.8, "yellow eyes": 0.6, "swollen legs": 0.6, FATIGUE: 0.7, "easy bruising": 0.4,
      "vomiting blood": 0.3, "confusion": 0.3, "weight loss": 0.4, "loss of appetite": 0.5},
     [("Spironolactone 100mg", 0.8), ("Propranolol 40mg", 0.6), ("Lactulose syrup", 0.6)],
     [("Liver function test", 0.9), ("Abdominal ultrasound", 0.8), ("Prothrombin time", 0.7)]),
    # Haematology
    ("Iron deficiency anaemia", "Anaemia", "Haematology", 0.040,
     {FATIGUE: 0.9, "pale skin": 0.8, "shortness of breath": 0.4, "dizziness": 0.5, "brittle nails": 0.4,
      "craving to eat ice or soil": 0.3, "hair loss": 0.3, "racing heartbeat": 0.3, "generalised weakness": 0.6},
     [("Ferrous sulphate 200mg", 0.9), ("Folic acid 5mg", 0.4)], [("Complete blood count", 0.95), ("Serum ferritin", 0.9), ("Peripheral blood film", 0.5)]),
    ("Thalassaemia", None, "Haematology", 0.010,
     {FATIGUE: 0.8, "pale skin": 0.8, "yellow eyes": 0.4, "abdominal swelling": 0.4, "slow growth": 0.3,
      "dark urine": 0.3, "generalised weakness": 0.6},
     [("Folic acid 5mg", 0.8), ("Deferasirox 500mg", 0.5)], [("Haemoglobin electrophoresis", 0.95), ("Complete blood count", 0.9), ("Serum ferritin", 0.6)]),
    ("Vitamin B12 deficiency anaemia", "Anaemia", "Haematology", 0.012,
     {FATIGUE: 0.8, "pale skin": 0.6, "tingling in hands and feet": 0.7, "sore red tongue": 0.6, "mouth ulcers": 0.4,
      "memory problems": 0.3, "loss of balance": 0.3, "generalised weakness": 0.5},
     [("Cyanocobalamin injection", 0.9), ("Methylcobalamin 500mcg", 0.6)], [("Serum vitamin B12", 0.95), ("Complete blood count", 0.9)]),
    # Dermatology
    ("Scabies", None, "Dermatology", 0.030,
     {"itching": 0.9, "itching worse at night": 0.9, "small red bumps": 0.7, "rash between fingers": 0.7,
      "family members itching": 0.5, "skin rash": 0.5},
     [("Permethrin 5% cream", 0.95), ("Cetirizine 10mg", 0.5)], [("Skin scraping microscopy", 0.5)]),
    ("Eczema", None, "Dermatology", 0.025,
     {"itching": 0.8, "dry skin": 0.8, "red patches": 0.7, "skin rash": 0.6, "cracked skin": 0.5, "oozing skin": 0.3},
     [("Hydrocortisone 1% cream", 0.8), ("Emollient cream", 0.8), ("Cetirizine 10mg", 0.4)], [("Serum IgE", 0.3)]),
    ("Psoriasis", None, "Dermatology", 0.012,
     {"scaly patches": 0.9, "red patches": 0.8, "itching": 0.5, "nail pitting": 0.4, "joint pain": 0.2, "dry skin": 0.5,
      "cracked skin": 0.4},
     [("Clobetasol 0.05% ointment", 0.8), ("Calcipotriol ointment", 0.7)], [("Skin biopsy", 0.4)]),
    ("Tinea corporis", "Fungal skin infection", "Dermatology", 0.035,
     {"ring-shaped rash": 0.9, "itching": 0.8, "red patches": 0.5, "scaly patches": 0.5, "skin rash": 0.5,
      "rash in skin folds": 0.5},
     [("Clotrimazole 1% cream", 0.8), ("Terbinafine 250mg", 0.6)], [("KOH skin scraping", 0.7)]),
    ("Acne vulgaris", None, "Dermatology", 0.030,
     {"pimples": 0.95, "blackheads": 0.7, "oily skin": 0.6, "painful skin lumps": 0.4, "skin scarring": 0.3,
      "red patches": 0.2},
     [("Benzoyl peroxide 5% gel", 0.8), ("Adapalene 0.1% gel", 0.7), ("Doxycycline 100mg", 0.5)], [("Clinical skin examination", 0.6)]),
    # Gynaecology & Obstetrics
    ("Polycystic ovary syndrome", None, "Gynaecology & Obstetrics", 0.025,
     {"irregular periods": 0.9, "excess facial hair": 0.7, "weight gain": 0.6, "pimples": 0.5, "hair loss": 0.3,
      "difficulty conceiving": 0.5, "dark skin patches": 0.3},
     [("Combined oral contraceptive pill", 0.7), ("Metformin 500mg", 0.6)], [("Pelvic ultrasound", 0.9), ("Hormone profile", 0.7)]),
    ("Endometriosis", None, "Gynaecology & Obstetrics", 0.012,
     {"painful periods": 0.9, "lower abdominal pain": 0.8, "pain during intercourse": 0.6, "heavy periods": 0.5,
      "difficulty conceiving": 0.5, "lower back pain": 0.4, FATIGUE: 0.3},
     [("Mefenamic acid 500mg", 0.7), ("Dienogest 2mg", 0.7)], [("Pelvic ultrasound", 0.8), ("Diagnostic laparoscopy", 0.6)]),
    ("Pelvic inflammatory disease", None, "Gynaecology & Obstetrics", 0.012,
     {"lower abdominal pain": 0.9, "abnormal vaginal discharge": 0.8, "fever": 0.5, "pain during intercourse": 0.5,
      "burning urination": 0.3, "irregular bleeding": 0.4, "nausea": 0.2},
     [("Ceftriaxone 500mg injection", 0.8), ("Doxycycline 100mg", 0.8), ("Metronidazole 400mg", 0.7)],
     [("High vaginal swab", 0.8), ("Pelvic ultrasound", 0.6), ("Pregnancy test", 0.5)]),
    ("Primary dysmenorrhoea", "Dysmenorrhoea", "Gynaecology & Obstetrics", 0.030,
     {"painful periods": 0.95, "lower abdominal pain": 0.7, "lower back pain": 0.5, "nausea": 0.4, "headache": 0.3,
      "diarrhoea": 0.2},
     [("Mefenamic acid 500mg", 0.9), ("Hyoscine butylbromide 10mg", 0.6)], [("Pelvic ultrasound", 0.4)]),
    ("Uterine fibroid", None, "Gynaecology & Obstetrics", 0.015,
     {"heavy periods": 0.9, "prolonged periods": 0.7, "lower abdominal pain": 0.4, "abdominal swelling": 0.4,
      "frequent urination": 0.3, "pale skin": 0.3, FATIGUE: 0.4},
     [("Tranexamic acid 500mg", 0.8), ("Ferrous sulphate 200mg", 0.5)], [("Pelvic ultrasound", 0.95), ("Complete blood count", 0.6)]),
    # Urology
    ("Urinary tract infection", None, "Urology", 0.040,
     {"burning urination": 0.9, "frequent urination": 0.8, "urgency to urinate": 0.7, "lower abdominal pain": 0.5,
      "cloudy urine": 0.5, "mild fever": 0.3, "blood in urine": 0.2},
     [("Nitrofurantoin 100mg", 0.8), ("Ciprofloxacin 500mg", 0.6)], [("Urine routine examination", 0.9), ("Urine culture", 0.8)]),
    ("Urolithiasis", "Kidney stone", "Urology", 0.020,
     {"severe flank pain": 0.9, "pain radiating to groin": 0.8, "blood in urine": 0.6, "nausea": 0.5, "vomiting": 0.4,
      "burning urination": 0.3, "urgency to urinate": 0.3},
     [("Diclofenac 75mg injection", 0.8), ("Tamsulosin 0.4mg", 0.7)], [("CT KUB", 0.9), ("Ultrasound KUB", 0.8), ("Urine routine examination", 0.6)]),
    ("Benign prostatic hyperplasia", None, "Urology", 0.015,
     {"weak urine stream": 0.9, "frequent urination": 0.8, "night-time urination": 0.8, "difficulty starting urination": 0.7,
      "incomplete bladder emptying": 0.7, "urgency to urinate": 0.4},
     [("Tamsulosin 0.4mg", 0.9), ("Finasteride 5mg", 0.6)], [("Ultrasound KUB", 0.8), ("Serum PSA", 0.7), ("Uroflowmetry", 0.5)]),
    # Ophthalmology
    ("Conjunctivitis", None, "Ophthalmology", 0.030,
     {"red eyes": 0.95, "eye discharge": 0.8, "itchy eyes": 0.6, "watery eyes": 0.6, "gritty feeling in eye": 0.6,
      "eyelids stuck together in morning": 0.5},
     [("Chloramphenicol eye drops", 0.8), ("Lubricant eye drops", 0.5)], [("Slit lamp examination", 0.5)]),
    ("Cataract", None, "Ophthalmology", 0.015,
     {"blurred vision": 0.9, "glare from lights": 0.7, "poor night vision": 0.6, "faded colours": 0.5,
      "frequent change of glasses": 0.5, "double vision in one eye": 0.2},
     [("Lubricant eye drops", 0.3)], [("Slit lamp examination", 0.9), ("Visual acuity test", 0.8), ("Cataract surgery", 0.6)]),
    ("Glaucoma", None, "Ophthalmology", 0.008,
     {"loss of side vision": 0.8, "blurred vision": 0.6, "eye pain": 0.5, "seeing halos around lights": 0.6,
      "headache": 0.3, "red eyes": 0.3},
     [("Timolol 0.5% eye drops", 0.9), ("Latanoprost eye drops", 0.8)], [("Tonometry", 0.95), ("Visual field test", 0.8)]),
    # Orthopaedics
    ("Knee osteoarthritis", "Osteoarthritis", "Orthopaedics", 0.035,
     {"knee pain": 0.95, "knee stiffness": 0.8, "joint pain": 0.6, "crackling sound in knee": 0.5,
      "difficulty climbing stairs": 0.7, "swollen joints": 0.4},
     [("Paracetamol 500mg", 0.7), ("Diclofenac gel", 0.7), ("Glucosamine 1500mg", 0.3)], [("X-ray of knee", 0.9)]),
    ("Mechanical low back pain", "Back pain", "Orthopaedics", 0.040,
     {"lower back pain": 0.95, "back stiffness": 0.7, "pain on bending": 0.7, "muscle spasm in back": 0.5,
      "pain radiating to leg": 0.3, "pain worse after long sitting": 0.4},
     [("Naproxen 500mg", 0.7), ("Tolperisone 150mg", 0.5)], [("X-ray of lumbar spine", 0.6), ("MRI of lumbar spine", 0.3)]),
    ("Frozen shoulder", None, "Orthopaedics", 0.012,
     {"shoulder pain": 0.95, "shoulder stiffness": 0.9, "difficulty raising arm": 0.8, "night-time shoulder pain": 0.6,
      "difficulty dressing": 0.4, "neck pain": 0.2},
     [("Naproxen 500mg", 0.6), ("Methylprednisolone injection", 0.4)], [("X-ray of shoulder", 0.6), ("Physiotherapy", 0.8)]),
    ("Cervical spondylosis", None, "Orthopaedics", 0.025,
     {"neck pain": 0.9, "neck stiffness": 0.8, "pain radiating to arm": 0.5, "tingling in hands and feet": 0.3,
      "headache": 0.4, "dizziness": 0.2, "shoulder pain": 0.3},
     [("Naproxen 500mg", 0.6), ("Pregabalin 75mg", 0.3)], [("X-ray of cervical spine", 0.8), ("MRI of cervical spine", 0.4), ("Physiotherapy", 0.6)]),
    # Dentistry
    ("Dental caries", None, "Dentistry", 0.040,
     {"toothache": 0.9, "tooth sensitivity to sweets": 0.7, "tooth sensitivity to cold": 0.7, "visible hole in tooth": 0.6,
      "bad breath": 0.3, "pain on chewing": 0.5},
     [("Ibuprofen 400mg", 0.6), ("Fluoride toothpaste", 0.5)], [("Dental X-ray", 0.8), ("Dental filling", 0.8)]),
    ("Gingivitis", None, "Dentistry", 0.035,
     {"bleeding gums": 0.95, "swollen gums": 0.8, "bad breath": 0.6, "red gums": 0.7, "receding gums": 0.3,
      "pain on chewing": 0.2},
     [("Chlorhexidine mouthwash", 0.9)], [("Dental scaling", 0.9)]),
    ("Dental abscess", None, "Dentistry", 0.015,
     {"severe throbbing toothache": 0.9, "toothache": 0.7, "facial swelling": 0.7, "fever": 0.5, "pain on chewing": 0.7,
      "bad taste in mouth": 0.5, "swollen neck glands": 0.4},
     [("Amoxicillin 500mg", 0.8), ("Metronidazole 400mg", 0.7), ("Ibuprofen 400mg", 0.6)], [("Dental X-ray", 0.8), ("Incision and drainage", 0.6)]),
    # Infectious Disease
    ("Malaria", None, "Infectious Disease", 0.010,
     {"fever": 0.95, "chills": 0.9, "sweating": 0.7, "headache": 0.6, "body ache": 0.6, "nausea": 0.4, "vomiting": 0.3,
      "fever that comes and goes": 0.7, FATIGUE: 0.5},
     [("Artemether-lumefantrine", 0.9), ("Paracetamol 500mg", 0.6)], [("Malaria rapid diagnostic test", 0.9), ("Peripheral blood film", 0.8)]),
    ("Typhoid fever", "Enteric fever", "Infectious Disease", 0.015,
     {"fever": 0.95, "stepwise rising fever": 0.7, "abdominal pain": 0.5, "headache": 0.6, "loss of appetite": 0.6,
      "constipation": 0.4, "diarrhoea": 0.3, FATIGUE: 0.6, "coated tongue": 0.4},
     [("Azithromycin 500mg", 0.8), ("Ceftriaxone 2g injection", 0.7), ("Paracetamol 500mg", 0.6)],
     [("Blood culture", 0.9), ("Widal test", 0.5), ("Complete blood count", 0.6)]),
    ("Dengue fever", "Dengue", "Infectious Disease", 0.015,
     {"fever": 0.95, "severe body ache": 0.8, "pain behind the eyes": 0.7, "headache": 0.7, "skin rash": 0.5,
      "nausea": 0.4, "bleeding gums": 0.2, FATIGUE: 0.5, "joint pain": 0.5},
     [("Paracetamol 500mg", 0.9), ("Oral rehydration salts", 0.7)], [("Dengue NS1 antigen", 0.9), ("Complete blood count", 0.9)]),
    ("Chikungunya", None, "Infectious Disease", 0.008,
     {"fever": 0.9, "severe joint pain": 0.9, "joint pain": 0.8, "swollen joints": 0.5, "skin rash": 0.5, "headache": 0.4,
      "muscle pain": 0.5, FATIGUE: 0.5},
     [("Paracetamol 500mg", 0.9)], [("Chikungunya IgM", 0.8), ("Complete blood count", 0.6)]),
]

# Extra fatigue edges so the symptom is the most frequent one, as in large clinical graphs.
FATIGUE_EXTRA = {
    "Common cold": 0.2, "Hypertension": None, "Migraine": 0.2, "Acute gastritis": 0.2, "Gout": 0.1,
    "Asthma": 0.3, "Tonsillitis": 0.3, "Otitis media": 0.1, "Acute sinusitis": 0.3, "Psoriasis": 0.2,
    "Polycystic ovary syndrome": 0.3, "Pelvic inflammatory disease": 0.3, "Urinary tract infection": 0.2,
    "Benign prostatic hyperplasia": 0.1, "Stroke": 0.4, "Peripheral neuropathy": 0.3, "Epilepsy": 0.3,
    "Peptic ulcer disease": 0.3, "Gastro-oesophageal reflux disease": 0.2, "Frozen shoulder": 0.1,
}

# English synonyms (surface -> symptom name).
EN_SYNONYMS = {
    "high temperature": "fever",
    "temperature": "fever",
    "tiredness": FATIGUE,
    "feeling tired all the time": FATIGUE,
    "exhaustion": FATIGUE,
    "breathlessness": "shortness of breath",
    "difficulty breathing": "shortness of breath",
    "tummy pain": "abdominal pain",
    "stomach ache": "abdominal pain",
    "loose motions": "diarrhoea",
    "loose stools": "diarrhoea",
    "diarrhea": "diarrhoea",
    "throwing up": "vomiting",
    "palpitations": "racing heartbeat",
    "heart racing": "racing heartbeat",
    "head ache": "headache",
    "giddiness": "dizziness",
    "lightheadedness": "dizziness",
    "runny nose and sneezing": "runny nose",
    "blocked nose": "nasal congestion",
    "stuffy nose": "nasal congestion",
    "jaundice": "yellow eyes",
    "yellowish eyes": "yellow eyes",
    "pins and needles": "tingling in hands and feet",
    "fits": "seizures",
    "convulsions": "seizures",
    "acid reflux": "heartburn",
    "painful urination": "burning urination",
    "peeing often": "frequent urination",
    "always thirsty": "excessive thirst",
    "tooth pain": "toothache",
    "pink eye": "red eyes",
    "back ache": "lower back pain",
    "backache": "lower back pain",
    "rash": "skin rash",
    "itchy skin": "itching",
    "swollen ankles": "swollen legs",
    "body pain": "body ache",
    "chest discomfort on exertion": "pain on exertion",
    "period pain": "painful periods",
    "menstrual cramps": "painful periods",
    "loss of weight": "weight loss",
    "poor appetite": "loss of appetite",
    "feeling sick": "nausea",
    "sleeplessness": "difficulty sleeping",
    "insomnia": "difficulty sleeping",
    "fainting spells": "fainting",
    "blood in sputum": "coughing up blood",
}

# Bengali variants per symptom name: {locale: [surfaces]}.
BN_VARIANTS = {
    "fever": {"bn_standard": ["জ্বর"], "bn_colloquial": ["গা গরম", "জ্বর জ্বর লাগে"], "bn_sylheti": ["জর"], "bn_chittagonian": ["জ্বর উডে"]},
    "headache": {"bn_standard": ["মাথাব্যথা"], "bn_colloquial": ["মাথা ব্যথা করে"], "bn_sylheti": ["মাতা বিষ"], "bn_chittagonian": ["মাথা বিষ গরে"]},
    "cough": {"bn_standard": ["কাশি"], "bn_colloquial": ["কাশি হচ্ছে"], "bn_sylheti": ["কাশ"], "bn_chittagonian": ["হাশি"]},
    "chest pain": {"bn_standard": ["বুকে ব্যথা"], "bn_colloquial": ["বুক ব্যথা করে"], "bn_sylheti": ["বুকো বিষ"], "bn_chittagonian": ["বুহত বিষ"]},
    "abdominal pain": {"bn_standard": ["পেটে ব্যথা"], "bn_colloquial": ["পেট ব্যথা"], "bn_sylheti": ["পেটো বিষ"], "bn_chittagonian": ["পেডত বিষ"]},
    "vomiting": {"bn_standard": ["বমি"], "bn_colloquial": ["বমি হচ্ছে"], "bn_sylheti": ["উল্টি"], "bn_chittagonian": ["বমি গরের"]},
    "nausea": {"bn_standard": ["বমি বমি ভাব"], "bn_colloquial": ["গা গোলায়"]},
    "diarrhoea": {"bn_standard": ["ডায়রিয়া"], "bn_colloquial": ["পাতলা পায়খানা"], "bn_sylheti": ["পাতলা পায়খানা"], "bn_chittagonian": ["দাস্ত"]},
    FATIGUE: {"bn_standard": ["অকারণ ক্লান্তি"], "bn_colloquial": ["খুব ক্লান্ত লাগে"], "bn_sylheti": ["জান কাহিল"], "bn_chittagonian": ["শরীল কাহিল লাগে"]},
    "generalised weakness": {"bn_standard": ["দুর্বলতা"], "bn_colloquial": ["শরীর দুর্বল লাগে"]},
    "shortness of breath": {"bn_standard": ["শ্বাসকষ্ট"], "bn_colloquial": ["দম বন্ধ লাগে"], "bn_sylheti": ["দম ফুরায়"], "bn_chittagonian": ["দম ন পাই"]},
    "dizziness": {"bn_standard": ["মাথা ঘোরা"], "bn_colloquial": ["মাথা ঘুরায়"], "bn_sylheti": ["মাতা গুরায়"]},
    "joint pain": {"bn_standard": ["গাঁটে ব্যথা"], "bn_colloquial": ["জোড়ায় জোড়ায় ব্যথা"]},
    "lower back pain": {"bn_standard": ["কোমরে ব্যথা"], "bn_colloquial": ["কোমর ব্যথা"], "bn_sylheti": ["কোমরো বিষ"]},
    "sore throat": {"bn_standard": ["গলা ব্যথা"], "bn_colloquial": ["গলায় ব্যথা"]},
    "runny nose": {"bn_standard": ["নাক দিয়ে পানি পড়া"], "bn_colloquial": ["সর্দি"]},
    "sneezing": {"bn_standard": ["হাঁচি"], "bn_colloquial": ["হাঁচি আসে"]},
    "itching": {"bn_standard": ["চুলকানি"], "bn_colloquial": ["গা চুলকায়"], "bn_sylheti": ["খাউজানি"], "bn_chittagonian": ["খাজানি"]},
    "skin rash": {"bn_standard": ["চামড়ায় ফুসকুড়ি"], "bn_colloquial": ["গায়ে দানা"]},
    "burning urination": {"bn_standard": ["প্রস্রাবে জ্বালাপোড়া"], "bn_colloquial": ["প্রস্রাব করলে জ্বলে"]},
    "frequent urination": {"bn_standard": ["ঘন ঘন প্রস্রাব"], "bn_colloquial": ["বারবার প্রস্রাব হয়"]},
    "excessive thirst": {"bn_standard": ["অতিরিক্ত পিপাসা"], "bn_colloquial": ["খুব পানি পিপাসা লাগে"]},
    "weight loss": {"bn_standard": ["ওজন কমে যাওয়া"], "bn_colloquial": ["শুকিয়ে যাচ্ছি"]},
    "loss of appetite": {"bn_standard": ["ক্ষুধামন্দা"], "bn_colloquial": ["খেতে ইচ্ছা করে না"], "bn_chittagonian": ["খাইতাম মন ন চায়"]},
    "racing heartbeat": {"bn_standard": ["বুক ধড়ফড়"], "bn_colloquial": ["বুক ধড়ফড় করে"], "bn_sylheti": ["কলিজা ধড়ফড় করে"]},
    "yellow eyes": {"bn_standard": ["চোখ হলুদ"], "bn_colloquial": ["চোখ হলদে হয়ে গেছে"]},
    "red eyes": {"bn_standard": ["চোখ লাল"], "bn_colloquial": ["চোখ লাল হয়ে গেছে"]},
    "blurred vision": {"bn_standard": ["চোখে ঝাপসা দেখা"], "bn_colloquial": ["ঝাপসা দেখি"]},
    "toothache": {"bn_standard": ["দাঁতে ব্যথা"], "bn_colloquial": ["দাঁত ব্যথা"], "bn_sylheti": ["দাত বিষ"]},
    "bleeding gums": {"bn_standard": ["মাড়ি থেকে রক্ত পড়া"], "bn_colloquial": ["দাঁতের গোড়া দিয়ে রক্ত পড়ে"]},
    "swollen legs": {"bn_standard": ["পা ফুলে যাওয়া"], "bn_colloquial": ["পা ফোলা"]},
    "constipation": {"bn_standard": ["কোষ্ঠকাঠিন্য"], "bn_colloquial": ["পায়খানা কষা"]},
    "heartburn": {"bn_standard": ["বুক জ্বালা"], "bn_colloquial": ["বুক জ্বলে"], "bn_chittagonian": ["বুক জ্বলের"]},
    "chills": {"bn_standard": ["কাঁপুনি"], "bn_colloquial": ["শীত শীত লাগে"]},
    "night sweats": {"bn_standard": ["রাতে ঘাম হওয়া"], "bn_colloquial": ["রাতে ঘামি"]},
    "ear pain": {"bn_standard": ["কানে ব্যথা"], "bn_colloquial": ["কান ব্যথা"], "bn_sylheti": ["কানো বিষ"]},
    "coughing up blood": {"bn_standard": ["কাশির সাথে রক্ত"]},
    "body ache": {"bn_standard": ["শরীরে ব্যথা"], "bn_colloquial": ["গা ব্যথা"], "bn_sylheti": ["গাও বিষ"], "bn_chittagonian": ["গাত বিষ"]},
    "numbness": {"bn_standard": ["অবশ ভাব"], "bn_colloquial": ["অবশ লাগে"]},
    "tingling in hands and feet": {"bn_standard": ["হাত পা ঝিনঝিন করা"], "bn_colloquial": ["হাত পা ঝিমঝিম করে"]},
    "pale skin": {"bn_standard": ["ফ্যাকাশে ত্বক"], "bn_colloquial": ["শরীর ফ্যাকাশে"]},
    "irregular periods": {"bn_standard": ["অনিয়মিত মাসিক"], "bn_colloquial": ["মাসিক ঠিকমতো হয় না"]},
    "painful periods": {"bn_standard": ["মাসিকের সময় ব্যথা"], "bn_colloquial": ["মাসিকে পেট ব্যথা"]},
    "wheezing": {"bn_standard": ["শ্বাসে শোঁ শোঁ শব্দ"], "bn_colloquial": ["বুকে সাঁই সাঁই শব্দ"]},
    "knee pain": {"bn_standard": ["হাঁটুতে ব্যথা"], "bn_colloquial": ["হাঁটু ব্যথা"]},
    "neck pain": {"bn_standard": ["ঘাড়ে ব্যথা"], "bn_colloquial": ["ঘাড় ব্যথা"]},
    "bloating": {"bn_standard": ["পেট ফাঁপা"], "bn_colloquial": ["পেট ফুলে থাকে"]},
    "difficulty sleeping": {"bn_standard": ["ঘুম না হওয়া"], "bn_colloquial": ["রাতে ঘুম আসে না"]},
    "nasal congestion": {"bn_standard": ["নাক বন্ধ"], "bn_colloquial": ["নাক বন্ধ হয়ে থাকে"]},
    "seizures": {"bn_standard": ["খিঁচুনি"], "bn_colloquial": ["খিঁচুনি হয়"]},
    "dark urine": {"bn_standard": ["গাঢ় রঙের প্রস্রাব"], "bn_colloquial": ["প্রস্রাব হলুদ"]},
    "upper abdominal pain": {"bn_standard": ["পেটের উপরের দিকে ব্যথা"]},
    "lower abdominal pain": {"bn_standard": ["তলপেটে ব্যথা"], "bn_colloquial": ["তলপেট ব্যথা"]},
    "indigestion": {"bn_standard": ["বদহজম"], "bn_colloquial": ["হজম হয় না"]},
    "sweating": {"bn_standard": ["ঘাম হওয়া"], "bn_colloquial": ["খুব ঘামি"]},
}

FAMILY_HISTORY = ["Diabetes", "Hypertension", "Asthma", "Heart disease", "Stroke", "Thyroid disease", "Kidney disease"]
MEDICAL_HISTORY = ["Hypertension", "Diabetes", "Asthma", "Peptic ulcer", "Tuberculosis in childhood", "Anaemia",
                   "Migraine", "Appendicectomy"]
MEDICATIONS = ["Amlodipine 5mg", "Metformin 500mg", "Omeprazole 20mg", "Salbutamol inhaler 100mcg",
               "Levothyroxine 50mcg", "Paracetamol 500mg as needed"]
ALLERGIES = ["Penicillin", "Sulfa drugs", "Dust", "Seafood", "NSAIDs"]
REMARKS = ["Smoker", "Non-smoker", "Sedentary lifestyle", "Works night shifts", "Recently travelled",
           "Lives in a crowded household", "Pregnancy ruled out", ""]
ADVICE = {
    "default": "Follow up with the recommended specialist",
    "Infectious Disease": "Maintain hydration and monitor temperature",
    "Cardiology": "Seek urgent care if chest pain worsens",
}


def slug(text):
    return re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_")


def words(text):
    return " " + re.sub(r"[^\w]+", " ", text.lower()).strip() + " "


def fmt(w):
    return round(float(w), 3)


def build_graph():
    diseases, symptoms, drugs, procedures, edges = [], {}, {}, {}, []
    symptom_disease_count = defaultdict(int)
    disease_symptoms = {}
    for name, parent, specialty, prior, syms, drug_list, proc_list in DISEASES:
        assert specialty in SPECIALTIES, specialty
        did = "d_" + slug(name)
        syms = dict(syms)
        extra = FATIGUE_EXTRA.get(name)
        if extra and FATIGUE not in syms:
            syms[FATIGUE] = extra
        assert 6 <= len(syms) <= 37, (name, len(syms))
        diseases.append({"id": did, "name": name, "parent_term": parent or did, "specialty": specialty,
                         "prior": prior, "excluded_flag": False})
        disease_symptoms[did] = syms
        for s, w in syms.items():
            sid = "s_" + slug(s)
            symptoms[sid] = s
            symptom_disease_count[sid] += 1
            edges.append({"kind": "disease_symptom", "from": did, "to": sid, "weight": fmt(w)})
        for n, w in drug_list:
            tid = "dr_" + slug(n)
            drugs[tid] = n
            edges.append({"kind": "disease_drug", "from": did, "to": tid, "weight": fmt(w)})
        for n, w in proc_list:
            tid = "pr_" + slug(n)
            procedures[tid] = n
            edges.append({"kind": "disease_procedure", "from": did, "to": tid, "weight": fmt(w)})

    top = max(symptom_disease_count.items(), key=lambda kv: (kv[1], kv[0]))
    assert symptoms[top[0]] == FATIGUE, top

    # symptom_symptom: P(b | a) estimated from co-membership, top 6 per source.
    members = defaultdict(set)
    for did, syms in disease_symptoms.items():
        for s in syms:
            members["s_" + slug(s)].add(did)
    for a in sorted(members):
        scored = []
        for b in members:
            if a == b:
                continue
            shared = len(members[a] & members[b])
            if shared:
                scored.append((-shared / len(members[a]), b))
        scored.sort()
        for neg, b in scored[:6]:
            edges.append({"kind": "symptom_symptom", "from": a, "to": b, "weight": fmt(-neg)})

    disease_names = [d["name"] for d in diseases]
    for name in list(symptoms.values()) + SPECIALTIES + list(EN_SYNONYMS):
        for dn in disease_names:
            assert words(dn) not in words(name), (dn, name)

    def flow(name):
        if "fever" in name:
            return "fever"
        if "cough" in name:
            return "cough"
        if re.search(r"\b(pain|ache|toothache|headache|backache)\b", name) or name.endswith("ache"):
            return "pain"
        return "none"

    common = {sid for sid, n in symptom_disease_count.items() if n >= 4}
    symptom_nodes = [{"id": sid, "name": symptoms[sid], "special_flow": flow(symptoms[sid]),
                      "common_flag": sid in common} for sid in sorted(symptoms)]
    graph = {
        "meta": {"name": "demo-triage-kg", "version": "1.0"},
        "specialties": SPECIALTIES,
        "diseases": diseases,
        "symptoms": symptom_nodes,
        "drugs": [{"id": k, "name": v, "kind": "drug"} for k, v in sorted(drugs.items())],
        "procedures": [{"id": k, "name": v, "kind": "procedure"} for k, v in sorted(procedures.items())],
        "edges": edges,
    }
    return graph, disease_symptoms


def build_lexicon(graph):
    by_name = {s["name"]: s["id"] for s in graph["symptoms"]}
    rows = []
    seen = set()

    def add(surface, locale, name):
        assert name in by_name, name
        key = (surface.lower(), locale)
        assert key not in seen, key
        seen.add(key)
        rows.append((surface, locale, by_name[name]))

    for s in graph["symptoms"]:
        add(s["name"], "en", s["name"])
    for surface, name in sorted(EN_SYNONYMS.items()):
        assert surface not in by_name, surface
        add(surface, "en", name)
    for name in sorted(BN_VARIANTS):
        for locale in ["bn_standard", "bn_colloquial", "bn_sylheti", "bn_chittagonian"]:
            for surface in BN_VARIANTS[name].get(locale, []):
                add(surface, locale, name)
    return rows


def build_vignettes(graph, disease_symptoms, rng):
    diseases = graph["diseases"]
    by_specialty = defaultdict(list)
    for d in diseases:
        by_specialty[d["specialty"]].append(d)
    symptom_names = {s["id"]: s["name"] for s in graph["symptoms"]}
    drugs = {e["id"]: e["name"] for e in graph["drugs"]}
    procs = {e["id"]: e["name"] for e in graph["procedures"]}
    therapy = defaultdict(lambda: {"disease_drug": [], "disease_procedure": []})
    for e in graph["edges"]:
        if e["kind"] in ("disease_drug", "disease_procedure"):
            therapy[e["from"]][e["kind"]].append((-e["weight"], e["to"]))

    assert sum(CASES_PER_SPECIALTY.values()) == 185
    picks = []
    for spec in SPECIALTIES:
        pool = by_specialty[spec]
        for i in range(CASES_PER_SPECIALTY[spec]):
            picks.append(pool[i % len(pool)])
    rng.shuffle(picks)

    gyn = [i for i, d in enumerate(picks) if d["specialty"] == "Gynaecology & Obstetrics"]
    male_only = {"Benign prostatic hyperplasia"}
    forced_male = [i for i, d in enumerate(picks) if d["name"] in male_only]
    free = [i for i in range(len(picks)) if i not in gyn and i not in forced_male]
    rng.shuffle(free)
    females_needed = 90 - len(gyn)
    sexes = {}
    for i in gyn:
        sexes[i] = "female"
    for i in forced_male:
        sexes[i] = "male"
    for j, i in enumerate(free):
        sexes[i] = "female" if j < females_needed else "male"

    ages = [rng.randint(18, 78) for _ in picks]
    ages[0], ages[1] = 18, 78

    rows = []
    for i, d in enumerate(picks):
        syms = disease_symptoms[d["id"]]
        ranked = sorted(syms.items(), key=lambda kv: (-kv[1], kv[0]))
        primary = [ranked[0][0]]
        if len(ranked) > 1 and rng.random() < 0.5:
            primary.append(ranked[1][0])
        # Patients under-report and mention unrelated complaints.
        additional = [s for s, w in ranked if s not in primary and rng.random() < 0.7 * w]
        for _ in range(rng.choice([0, 0, 1, 1, 2])):
            noise = rng.choice(sorted(symptom_names.values()))
            if noise not in syms and noise not in additional:
                additional.append(noise)
        # Complaints sometimes use a lay synonym.
        synonyms = defaultdict(list)
        for surface, name in EN_SYNONYMS.items():
            synonyms[name].append(surface)
        primary = [rng.choice(sorted(synonyms[p])) if synonyms[p] and rng.random() < 0.25 else p for p in primary]

        parent = d["parent_term"] if d["parent_term"] != d["id"] else d["name"]
        gold_main = parent if rng.random() < 0.3 else d["name"]
        overlap = []
        for other in diseases:
            if other["id"] == d["id"]:
                continue
            shared = len(set(disease_symptoms[other["id"]]) & set(syms))
            overlap.append((-shared, other["specialty"] != d["specialty"], other["name"]))
        overlap.sort()
        gold = [gold_main] + [o[2] for o in overlap[:2]]
        # Some reference labels favour a close differential.
        if rng.random() < 0.12:
            gold = [gold[1], gold[0], gold[2]]
        meds = [drugs[t] for _, t in sorted(therapy[d["id"]]["disease_drug"])[:3]]
        tests = [procs[t] for _, t in sorted(therapy[d["id"]]["disease_procedure"])[:3]]

        def sample(pool, p, k):
            return sorted(rng.sample(pool, k)) if rng.random() < p else []

        rows.append({
            "patient_id": f"Patient {i + 1}",
            "sex": sexes[i],
            "age": ages[i],
            "family_history": sample(FAMILY_HISTORY, 0.5, rng.randint(1, 2)),
            "medical_history": sample(MEDICAL_HISTORY, 0.4, 1),
            "current_medication": sample(MEDICATIONS, 0.3, 1),
            "allergies": sample(ALLERGIES, 0.2, 1),
            "remarks": rng.choice(REMARKS),
            "primary_complaints": primary,
            "additional_symptoms": additional,
            "gold_diagnoses": gold,
            "gold_medications": meds,
            "gold_tests": tests,
            "advice": ADVICE.get(d["specialty"], ADVICE["default"]),
            "gold_specialization": [d["specialty"]],
            "_disease": d,
        })
    return rows


def build_panel(graph, vignettes, rng):
    diseases = graph["diseases"]
    rows = []
    for p in range(1, 6):
        pid = f"P{p}"
        for v in vignettes:
            d = v["_disease"]
            distractors = [x for x in v["gold_diagnoses"][1:]] + [rng.choice(diseases)["name"]]
            answer = []
            r = rng.random()
            if r < 0.50:
                answer.append(v["gold_diagnoses"][0])
            elif r < 0.62:
                answer.append(distractors[0])
                answer.append(d["name"])
            else:
                answer.append(distractors[0])
            for x in distractors[1:]:
                if len(answer) < rng.randint(1, 3) and x not in answer:
                    answer.append(x)
            answer = list(dict.fromkeys(answer))
            if rng.random() < 0.63:
                spec = d["specialty"]
            else:
                spec = rng.choice([s for s in SPECIALTIES if s != d["specialty"]])
            rows.append({"physician_id": pid, "patient_id": v["patient_id"], "diagnoses": answer,
                         "specialization": spec, "advice": v["advice"],
                         "rationale": "Based on the presenting complaints"})
    return rows


def cell(value):
    if isinstance(value, list):
        return "|".join(value)
    return str(value)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    graph, disease_symptoms = build_graph()
    (out / "demo_graph.json").write_text(json.dumps(graph, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")

    lex = build_lexicon(graph)
    with open(out / "demo_lexicon.tsv", "w", encoding="utf-8") as f:
        f.write("# surface\tlocale\tsymptom_id\n")
        for row in lex:
            f.write("\t".join(row) + "\n")

    vignettes = build_vignettes(graph, disease_symptoms, rng)
    columns = ["patient_id", "sex", "age", "family_history", "medical_history", "current_medication", "allergies",
               "remarks", "primary_complaints", "additional_symptoms", "gold_diagnoses", "gold_medications",
               "gold_tests", "advice", "gold_specialization"]
    with open(out / "demo_vignettes.tsv", "w", encoding="utf-8") as f:
        f.write("\t".join(columns) + "\n")
        for v in vignettes:
            f.write("\t".join(cell(v[c]) for c in columns) + "\n")

    panel = build_panel(graph, vignettes, rng)
    pcols = ["physician_id", "patient_id", "diagnoses", "specialization", "advice", "rationale"]
    with open(out / "demo_panel.tsv", "w", encoding="utf-8") as f:
        f.write("\t".join(pcols) + "\n")
        for r in panel:
            f.write("\t".join(cell(r[c]) for c in pcols) + "\n")

    print(f"diseases {len(graph['diseases'])}, symptoms {len(graph['symptoms'])}, drugs {len(graph['drugs'])}, "
          f"procedures {len(graph['procedures'])}, edges {len(graph['edges'])}, lexicon rows {len(lex)}, "
          f"vignettes {len(vignettes)}, panel rows {len(panel)}")


if __name__ == "__main__":
    main()
