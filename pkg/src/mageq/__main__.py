from mageq.cli import main

main()
