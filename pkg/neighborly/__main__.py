from neighborly.main import main

main()
