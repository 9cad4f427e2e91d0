import os
import sys

# modules import each other relative to charvar/, as the entry point does
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "charvar"))
