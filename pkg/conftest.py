import os
import sys

# The project modules live at the root and import each other by plain name, as main.py does
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
