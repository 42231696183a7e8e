a, b = map(int, input().split())
total = a + b
print(total)
