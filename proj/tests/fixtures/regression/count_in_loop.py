n = int(input())
arr = list(map(int, input().split()))
best = 0
for x in arr:
    best = max(best, arr.count(x))
print(best)
