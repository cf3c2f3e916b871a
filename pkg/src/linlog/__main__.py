from linlog.cli import main

main()
