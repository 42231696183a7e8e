n = int(input())
a = list(map(int, input().split()))
pairs = 0
for i in range(n):
    for j in range(n):
        if a[i] < a[j]:
            pairs += 1
print(pairs)
