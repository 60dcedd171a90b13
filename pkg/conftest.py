import os
import sys

# run the suite straight from a checkout, installed or not
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))
