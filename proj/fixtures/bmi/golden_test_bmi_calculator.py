import pytest
import bmi_calculator

def test_0():
    cut = bmi_calculator.BMICalc(246,680,2)
    cut.age = 18
    cut.classify_bmi_teens_and_children()
    cut.weight = 466
    cut.classify_bmi_adults()
    cut.classify_bmi_teens_and_children()
    cut.weight = 26
    cut.classify_bmi_adults()
