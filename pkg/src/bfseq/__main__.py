import sys

from bfseq.cli import main

sys.exit(main())
